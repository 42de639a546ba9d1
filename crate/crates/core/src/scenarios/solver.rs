//! Lagrangian RK4 and Eulerian method-of-lines transport solvers.

use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::TangentialJet;
use crate::derivatives::{tangential_rate, DerivativeKind, RateValue};
use crate::error::{MosaicError, Result};
use crate::geometry::{LocalState, MaterialMotion};
use crate::scalar::Real;
use crate::scenarios::{initial_tensor, InitialField, Scenario};
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Observer {
    Lagrangian,
    Eulerian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldKind {
    Vector,
    QTensor,
}

impl FieldKind {
    pub fn rank(self) -> usize {
        match self {
            Self::Vector => 1,
            Self::QTensor => 2,
        }
    }
}

/// Tensor-product grid over y¹ ∈ [δ, π − δ] (endpoints included) and periodic y² ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    pub n1: usize,
    pub n2: usize,
    pub delta: T,
}

impl<T: Real> Grid<T> {
    pub fn new(n1: usize, n2: usize) -> Self {
        Self { n1, n2, delta: T::c(0.15) }
    }

    pub fn y1(&self, i: usize) -> T {
        if self.n1 == 1 {
            return T::FRAC_PI_2();
        }
        self.delta + (T::PI() - self.delta - self.delta) * T::n(i) / T::n(self.n1 - 1)
    }

    pub fn y2(&self, j: usize) -> T {
        (T::PI() + T::PI()) * T::n(j) / T::n(self.n2)
    }

    /// Row-major nodes, y² fastest.
    pub fn nodes(&self) -> Vec<[T; 2]> {
        (0..self.n1).flat_map(|i| (0..self.n2).map(move |j| (i, j))).map(|(i, j)| [self.y1(i), self.y2(j)]).collect()
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone)]
pub struct TransportProblem<T> {
    pub scenario: Scenario<T>,
    pub kind: DerivativeKind,
    pub field: FieldKind,
    pub initial: InitialField<T>,
    pub grid: Grid<T>,
    pub dt: T,
    pub t_end: T,
    pub observer: Observer,
    /// Output every k-th step; `None` picks k so that at most 101 samples are kept.
    pub sample_every: Option<usize>,
}

impl<T: Real> TransportProblem<T> {
    pub fn new(scenario: Scenario<T>, kind: DerivativeKind, field: FieldKind) -> Self {
        Self {
            scenario,
            kind,
            field,
            initial: InitialField::Standard,
            grid: Grid::new(16, 32),
            dt: T::c(1e-3),
            t_end: T::one(),
            observer: Observer::Lagrangian,
            sample_every: None,
        }
    }

    fn validate(&self) -> Result<usize> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(MosaicError::Config("time step must be positive".into()));
        }
        if !(self.t_end >= T::zero()) || !self.t_end.is_finite() {
            return Err(MosaicError::Config("end time must be non-negative".into()));
        }
        if self.grid.is_empty() {
            return Err(MosaicError::Config("grid is empty".into()));
        }
        if !(self.grid.delta > T::zero()) || self.grid.delta + self.grid.delta >= T::PI() {
            return Err(MosaicError::Config("pole margin out of range".into()));
        }
        let ok = match (&self.kind, self.field) {
            (DerivativeKind::Truesdell, FieldKind::Vector) => false,
            (DerivativeKind::Convected(w), f) => w.n() == f.rank(),
            _ => true,
        };
        if !ok {
            return Err(MosaicError::UnsupportedKind { scenario: self.scenario.kind.name().into(), kind: self.kind.name() });
        }
        Ok((self.t_end / self.dt).round().to_f64_lossy().max(0.0) as usize)
    }
}

/// Sampled solution: `values[k][node]` at `times[k]`, nodes in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub nodes: Vec<[T; 2]>,
    pub values: Vec<Vec<Tensor<T>>>,
    pub observer: Observer,
}

fn sample_steps(steps: usize, every: Option<usize>) -> Vec<usize> {
    let mut k = every.unwrap_or_else(|| steps.div_ceil(100)).max(1);
    loop {
        let mut s: Vec<usize> = (0..=steps).step_by(k).collect();
        if *s.last().unwrap() != steps {
            s.push(steps);
        }
        if every.is_some() || s.len() <= 101 {
            return s;
        }
        k += 1;
    }
}

fn rate<T: Real>(kind: &DerivativeKind, value: &Tensor<T>, dy: [Tensor<T>; 2], s: &LocalState<T>) -> Result<Tensor<T>> {
    let jet = TangentialJet { value: value.clone(), dt: Tensor::zeros(2, value.rank()), dy };
    match tangential_rate(kind, &jet, s)?.value {
        RateValue::Tangential(q) => Ok(q),
        RateValue::Rep(r) => Ok(r.block(0).clone()),
    }
}

fn growth_check<T: Real>(x: &Tensor<T>, scale: T) -> Result<()> {
    let m = x.max_abs();
    if !m.is_finite() || m > T::c(1e6) * scale {
        return Err(MosaicError::StepTooLarge { growth: (m / scale).to_f64_lossy() });
    }
    Ok(())
}

/// RK4 for dr/dt = −rate(r) at one material point; returns the states at the requested steps.
pub fn transport_point<T: Real>(
    scenario: &Scenario<T>,
    kind: &DerivativeKind,
    r0: Tensor<T>,
    y: [T; 2],
    dt: T,
    samples: &[usize],
) -> Result<Vec<Tensor<T>>> {
    let chart = scenario.lagrangian_chart();
    let motion = MaterialMotion::Lagrangian;
    let rank = r0.rank();
    let zero = || [Tensor::zeros(2, rank), Tensor::zeros(2, rank)];
    let state = |t: T| LocalState::evaluate(&chart, &motion, t, y);
    let f = |s: &LocalState<T>, r: &Tensor<T>| -> Result<Tensor<T>> { Ok(rate(kind, r, zero(), s)?.scale(-T::one())) };
    let scale = T::one() + r0.max_abs();
    let mut out = Vec::with_capacity(samples.len());
    let mut r = r0;
    let mut step = 0;
    let mut start = state(T::zero())?;
    for &target in samples {
        while step < target {
            let t = T::n(step) * dt;
            let h = T::c(0.5) * dt;
            let mid = state(t + h)?;
            let end = state(T::n(step + 1) * dt)?;
            let k1 = f(&start, &r)?;
            let mut x = r.clone();
            x.axpy(h, &k1);
            let k2 = f(&mid, &x)?;
            let mut x = r.clone();
            x.axpy(h, &k2);
            let k3 = f(&mid, &x)?;
            let mut x = r.clone();
            x.axpy(dt, &k3);
            let k4 = f(&end, &x)?;
            let mut inc = k1;
            inc.axpy(T::c(2.0), &k2);
            inc.axpy(T::c(2.0), &k3);
            inc.add_assign(&k4);
            r.axpy(dt / T::c(6.0), &inc);
            growth_check(&r, scale)?;
            start = end;
            step += 1;
        }
        out.push(r.clone());
    }
    Ok(out)
}

/// Pointwise RK4 in the Lagrangian chart, parallel over nodes.
pub fn solve_lagrangian_transport<T: Real>(p: &TransportProblem<T>) -> Result<Trajectory<T>> {
    let steps = p.validate()?;
    if p.observer != Observer::Lagrangian {
        return Err(MosaicError::Config("lagrangian solver needs the lagrangian observer".into()));
    }
    let dt = if steps == 0 { p.dt } else { p.t_end / T::n(steps) };
    let samples = sample_steps(steps, p.sample_every);
    let nodes = p.grid.nodes();
    let per_node: Vec<Vec<Tensor<T>>> = nodes
        .par_iter()
        .map(|&y| {
            let r0 = initial_tensor(&p.scenario, &p.initial, p.field.rank(), y)?;
            transport_point(&p.scenario, &p.kind, r0, y, dt, &samples)
        })
        .collect::<Result<_>>()?;
    let values = (0..samples.len()).map(|k| per_node.iter().map(|v| v[k].clone()).collect()).collect();
    Ok(Trajectory { times: samples.iter().map(|&s| T::n(s) * dt).collect(), nodes, values, observer: Observer::Lagrangian })
}

/// Method of lines on the fixed Eulerian chart: 4th-order periodic differences in y², RK4 in t.
pub fn solve_eulerian_transport<T: Real>(p: &TransportProblem<T>) -> Result<Trajectory<T>> {
    let steps = p.validate()?;
    let (chart, motion) = p.scenario.eulerian()?;
    let dt = if steps == 0 { p.dt } else { p.t_end / T::n(steps) };
    let n2 = p.grid.n2;
    if n2 < 5 {
        return Err(MosaicError::Config("eulerian grid needs at least 5 points in y2".into()));
    }
    let h2 = (T::PI() + T::PI()) / T::n(n2);
    let nodes = p.grid.nodes();
    let states: Vec<LocalState<T>> =
        nodes.par_iter().map(|&y| LocalState::evaluate(&chart, &motion, T::zero(), y)).collect::<Result<_>>()?;
    let mut umax = T::zero();
    for s in &states {
        if s.mat.u[0].abs() > T::c(1e-12) {
            return Err(MosaicError::Config("eulerian solver supports transport along y2 only".into()));
        }
        umax = umax.max(s.mat.u[1].abs());
    }
    let limit = T::c(0.5) * h2 / umax.max(T::c(1e-300));
    if dt > limit {
        return Err(MosaicError::CflViolation { dt: dt.to_f64_lossy(), limit: limit.to_f64_lossy() });
    }
    let rank = p.field.rank();
    // The Eulerian and Lagrangian charts coincide at t = 0.
    let init: Vec<Tensor<T>> =
        nodes.iter().map(|&y| initial_tensor(&p.scenario, &p.initial, rank, y)).collect::<Result<_>>()?;
    let scale = T::one() + init.iter().map(Tensor::max_abs).fold(T::zero(), T::max);
    let c8 = T::c(8.0) / (T::c(12.0) * h2);
    let c1 = T::one() / (T::c(12.0) * h2);
    let rhs = |x: &[Tensor<T>]| -> Result<Vec<Tensor<T>>> {
        (0..nodes.len())
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n2, idx % n2);
                let at = |jj: usize| &x[i * n2 + jj % n2];
                let mut d2 = at(j + 1).sub(at(j + n2 - 1)).scale(c8);
                d2.axpy(-c1, &at(j + 2).sub(at(j + n2 - 2)));
                let dy = [Tensor::zeros(2, rank), d2];
                Ok(rate(&p.kind, &x[idx], dy, &states[idx])?.scale(-T::one()))
            })
            .collect()
    };
    let combine = |x: &[Tensor<T>], k: &[Tensor<T>], h: T| -> Vec<Tensor<T>> {
        x.iter().zip(k).map(|(a, b)| {
            let mut o = a.clone();
            o.axpy(h, b);
            o
        }).collect()
    };
    let samples = sample_steps(steps, p.sample_every);
    let mut values = Vec::with_capacity(samples.len());
    let mut x = init;
    let mut step = 0;
    for &target in &samples {
        while step < target {
            let h = T::c(0.5) * dt;
            let k1 = rhs(&x)?;
            let k2 = rhs(&combine(&x, &k1, h))?;
            let k3 = rhs(&combine(&x, &k2, h))?;
            let k4 = rhs(&combine(&x, &k3, dt))?;
            for idx in 0..x.len() {
                let mut inc = k1[idx].clone();
                inc.axpy(T::c(2.0), &k2[idx]);
                inc.axpy(T::c(2.0), &k3[idx]);
                inc.add_assign(&k4[idx]);
                x[idx].axpy(dt / T::c(6.0), &inc);
                growth_check(&x[idx], scale)?;
            }
            step += 1;
        }
        values.push(x.clone());
    }
    Ok(Trajectory { times: samples.iter().map(|&s| T::n(s) * dt).collect(), nodes, values, observer: Observer::Eulerian })
}

pub fn solve<T: Real>(p: &TransportProblem<T>) -> Result<Trajectory<T>> {
    match p.observer {
        Observer::Lagrangian => solve_lagrangian_transport(p),
        Observer::Eulerian => solve_eulerian_transport(p),
    }
}
