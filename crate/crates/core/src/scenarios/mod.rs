//! Force-free transport on deforming spheres and spheroids: closed forms, solvers and diagnostics.

mod qtensor;
mod solver;

pub use qtensor::{
    diagnostics, project_q, q_tensor_map, symmetric_eigen, tangent_angles, tensor_norm, trace, vector_norm,
    Diagnostics,
};
pub use solver::{
    solve, solve_eulerian_transport, solve_lagrangian_transport, transport_point, FieldKind, Grid, Observer,
    Trajectory, TransportProblem,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bundle::{change_observer, SpacetimeTensorRep};
use crate::derivatives::DerivativeKind;
use crate::error::{MosaicError, Result};
use crate::geometry::{evaluate_frame, observer_kinematics, MaterialMotion, SpheroidalChart, VelocityJet};
use crate::scalar::Real;
use crate::tensor::{Mat2, Tensor, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ScenarioKind {
    StretchingSpheroid,
    RotatingSphere,
    HelicalSpheroid,
}

impl ScenarioKind {
    pub const ALL: [Self; 3] = [Self::StretchingSpheroid, Self::RotatingSphere, Self::HelicalSpheroid];

    pub fn name(self) -> &'static str {
        match self {
            Self::StretchingSpheroid => "stretching-spheroid",
            Self::RotatingSphere => "rotating-sphere",
            Self::HelicalSpheroid => "helical-spheroid",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = MosaicError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| MosaicError::Config(format!("unknown scenario `{s}`")))
    }
}

/// Initial field in Lagrangian components at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialField<T> {
    /// r₀ = (−1, 1/sin y¹)/√2.
    Standard,
    /// r₀ scaled by 1 + ½cos y², for advection checks.
    Modulated,
    /// Constant contravariant components.
    Constant(Vec2<T>),
}

impl<T: Real> InitialField<T> {
    pub fn vector(&self, y: [T; 2]) -> Vec2<T> {
        let s = T::c(std::f64::consts::FRAC_1_SQRT_2);
        let standard = [-s, s / y[0].sin()];
        match self {
            Self::Standard => standard,
            Self::Modulated => {
                let m = T::one() + T::c(0.5) * y[1].cos();
                [m * standard[0], m * standard[1]]
            }
            Self::Constant(v) => *v,
        }
    }
}

/// Z(t, y) = diag(1, 1, 1 + κt)·e(y¹, y² + Ωt) seen by its Lagrangian observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario<T> {
    pub kind: ScenarioKind,
    pub stretch: T,
    pub spin: T,
}

impl<T: Real> Scenario<T> {
    pub fn new(kind: ScenarioKind) -> Self {
        let two_pi = T::PI() + T::PI();
        let (stretch, spin) = match kind {
            ScenarioKind::StretchingSpheroid => (T::one(), T::zero()),
            ScenarioKind::RotatingSphere => (T::zero(), two_pi),
            ScenarioKind::HelicalSpheroid => (T::one(), two_pi),
        };
        Self { kind, stretch, spin }
    }

    pub fn lagrangian_chart(&self) -> SpheroidalChart<T> {
        SpheroidalChart::new(self.stretch, self.spin)
    }

    /// Shape-stationary scenarios only: the fixed unit-sphere chart with v_m = (0, Ω).
    pub fn eulerian(&self) -> Result<(SpheroidalChart<T>, MaterialMotion<T>)> {
        if self.stretch != T::zero() {
            return Err(MosaicError::UnsupportedKind { scenario: self.kind.name().into(), kind: "eulerian observer".into() });
        }
        let spin = self.spin;
        Ok((SpheroidalChart::unit_sphere(), MaterialMotion::field(move |_, _| VelocityJet::constant([T::zero(), spin]))))
    }

    /// Eulerian coordinates of the material point y at time t.
    pub fn to_eulerian(&self, t: T, y: [T; 2]) -> [T; 2] {
        [y[0], y[1] + self.spin * t]
    }

    pub fn to_lagrangian(&self, t: T, y: [T; 2]) -> [T; 2] {
        [y[0], y[1] - self.spin * t]
    }

    /// G = 1 + κt(2 + κt)sin²y¹ = g₁₁.
    pub fn g11(&self, t: T, y1: T) -> T {
        let s = y1.sin();
        T::one() + self.stretch * t * (T::c(2.0) + self.stretch * t) * s * s
    }

    /// Rotation angle fraction f with f′ = (Ω/2π) cos y¹/√G and f(0) = 0.
    pub fn circulation(&self, t: T, y1: T) -> T {
        let w = self.spin / (T::PI() + T::PI());
        let (s, c) = y1.sin_cos();
        if self.stretch == T::zero() || s == T::zero() {
            return w * t * c;
        }
        let k = self.stretch;
        let num = (T::one() + k * t) * s + self.g11(t, y1).sqrt();
        w * c / (k * s) * (num / (T::one() + s)).ln()
    }

    pub fn circulation_rate(&self, t: T, y1: T) -> T {
        self.spin / (T::PI() + T::PI()) * y1.cos() / self.g11(t, y1).sqrt()
    }

    /// Per-slot solution operator M^i_j: r(t) = M r₀, q(t) = M q₀ Mᵀ.
    fn slot_operator(&self, sharp: Option<bool>, material: bool, t: T, y: [T; 2]) -> Result<Mat2<T>> {
        let gi = T::one() / self.g11(t, y[0]);
        let z = T::zero();
        let base = match sharp {
            Some(true) => return Ok([[T::one(), z], [z, T::one()]]),
            Some(false) => return Ok([[gi, z], [z, T::one()]]),
            None => [[gi.sqrt(), z], [z, T::one()]],
        };
        if !material {
            return Ok(base);
        }
        let f = evaluate_frame(&self.lagrangian_chart(), t, y)?;
        let e = f.eps_mixed();
        let ang = (T::PI() + T::PI()) * self.circulation(t, y[0]);
        let (sn, cs) = ang.sin_cos();
        let omega = [[cs + sn * e[0][0], sn * e[0][1]], [sn * e[1][0], cs + sn * e[1][1]]];
        Ok(crate::tensor::mul2(&omega, &base))
    }
}

/// Closed-form solution in Lagrangian components at (t, y), for rank 1 (vector) or 2.
pub fn closed_form_solution<T: Real>(
    scenario: &Scenario<T>,
    kind: &DerivativeKind,
    initial: &InitialField<T>,
    rank: usize,
    t: T,
    y: [T; 2],
) -> Result<Tensor<T>> {
    let unsupported = || MosaicError::UnsupportedKind { scenario: scenario.kind.name().into(), kind: kind.name() };
    let r0 = initial.vector(y);
    let ops: Vec<Mat2<T>> = match kind {
        DerivativeKind::Material => vec![scenario.slot_operator(None, true, t, y)?; rank],
        DerivativeKind::Jaumann => vec![scenario.slot_operator(None, false, t, y)?; rank],
        DerivativeKind::Convected(w) if w.n() == rank => {
            (1..=rank).map(|p| scenario.slot_operator(Some(w.is_sharp(p)), false, t, y)).collect::<Result<_>>()?
        }
        DerivativeKind::Truesdell if rank == 2 => {
            let q0 = initial_tensor(scenario, initial, 2, y)?;
            let chart = scenario.lagrangian_chart();
            let det_eta = |t: T| -> Result<T> {
                let f = evaluate_frame(&chart, t, y)?;
                let k = observer_kinematics(&chart, t, y)?;
                Ok(f.det_g / k.zeta)
            };
            let s = (det_eta(T::zero())? / det_eta(t)?).sqrt();
            return Ok(q0.scale(s));
        }
        _ => return Err(unsupported()),
    };
    match rank {
        1 => Ok(Tensor::vector(&crate::tensor::matvec2(&ops[0], &r0))),
        2 => {
            let q0 = initial_tensor(scenario, initial, 2, y)?;
            Ok(q0.apply_slot(0, &crate::tensor::flat2(&ops[0])).apply_slot(1, &crate::tensor::flat2(&ops[1])))
        }
        _ => Err(unsupported()),
    }
}

/// r₀ or q₀ = ρ(r₀) on the t = 0 frame.
pub fn initial_tensor<T: Real>(scenario: &Scenario<T>, initial: &InitialField<T>, rank: usize, y: [T; 2]) -> Result<Tensor<T>> {
    let r0 = initial.vector(y);
    match rank {
        1 => Ok(Tensor::vector(&r0)),
        2 => q_tensor_map(&evaluate_frame(&scenario.lagrangian_chart(), T::zero(), y)?, &r0),
        n => Err(MosaicError::RankMismatch { expected: 2, found: n }),
    }
}

/// Closed form in Eulerian components at Eulerian coordinates y_e.
pub fn closed_form_eulerian<T: Real>(
    scenario: &Scenario<T>,
    kind: &DerivativeKind,
    initial: &InitialField<T>,
    rank: usize,
    t: T,
    y_e: [T; 2],
) -> Result<Tensor<T>> {
    let (echart, _) = scenario.eulerian()?;
    let y_m = scenario.to_lagrangian(t, y_e);
    let q = closed_form_solution(scenario, kind, initial, rank, t, y_m)?;
    let rep = SpacetimeTensorRep::instantaneous(q);
    let sc = *scenario;
    let moved = change_observer(&rep, &scenario.lagrangian_chart(), &echart, &move |t, y| sc.to_eulerian(t, y), t, y_m, T::c(1e-9))?;
    Ok(moved.block(0).clone())
}

/// Time of the α-th tangential half-circulation, |f(t)| = α/2, at latitude y¹.
pub fn circulation_time<T: Real>(scenario: &Scenario<T>, y1: T, alpha: u32) -> Result<T> {
    if !(y1 > T::zero() && y1 < T::PI()) {
        return Err(MosaicError::DomainError { t: 0.0, y1: y1.to_f64_lossy(), y2: 0.0 });
    }
    if y1.cos().abs() < T::c(1e-12) || scenario.spin == T::zero() {
        return Err(MosaicError::NoCirculation);
    }
    let target = T::n(alpha as usize) * T::c(0.5);
    let h = |t: T| scenario.circulation(t, y1).abs() - target;
    if alpha == 0 {
        return Ok(T::zero());
    }
    let mut hi = T::one();
    let mut guard = 0;
    while h(hi) < T::zero() {
        hi = hi + hi;
        guard += 1;
        if guard > 200 || !hi.is_finite() {
            return Err(MosaicError::NoCirculation);
        }
    }
    let mut lo = T::zero();
    while hi - lo > T::c(1e-12) * (T::one() + hi) {
        let mid = T::c(0.5) * (lo + hi);
        if h(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = T::c(0.5) * (lo + hi);
    for _ in 0..3 {
        let d = scenario.circulation_rate(t, y1).abs();
        if d == T::zero() {
            break;
        }
        t = t - h(t) / d;
    }
    Ok(t)
}

/// t_α = (1/√3) sinh(√3α/2 + ln(2 + √3)) − 1 at 30° latitude on the helical spheroid.
pub fn circulation_time_30deg<T: Real>(alpha: u32) -> T {
    let r3 = T::c(3.0).sqrt();
    (r3 * T::n(alpha as usize) * T::c(0.5) + (T::c(2.0) + r3).ln()).sinh() / r3 - T::one()
}
