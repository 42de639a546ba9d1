//! Observer charts Z(t, y¹, y²) and their jets.

use std::sync::Arc;

use crate::error::{MosaicError, Result};
use crate::fd;
use crate::scalar::Real;
use crate::tensor::Vec3;

/// Value, first and second partials of a chart along (t, y¹, y²).
///
/// `d[0] = ∂_t Z`, `d[i] = ∂_i Z`; `dd[a][b] = ∂_a∂_b Z` (symmetric).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartJets<T> {
    pub z: Vec3<T>,
    pub d: [Vec3<T>; 3],
    pub dd: [[Vec3<T>; 3]; 3],
}

/// How jets are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetMode {
    /// Analytic jets when the chart has them, finite differences otherwise.
    Analytic,
    /// Analytic jets only; charts without them fail with `JetUnavailable`.
    AnalyticOnly,
    /// Always finite differences.
    FiniteDifference,
}

pub trait Chart<T: Real>: Send + Sync {
    fn eval(&self, t: T, y: [T; 2]) -> Vec3<T>;

    fn analytic_jets(&self, _t: T, _y: [T; 2]) -> Option<ChartJets<T>> {
        None
    }

    fn jet_mode(&self) -> JetMode {
        JetMode::Analytic
    }

    fn in_domain(&self, _t: T, _y: [T; 2]) -> bool {
        true
    }

    fn jets(&self, t: T, y: [T; 2]) -> Result<ChartJets<T>> {
        if !self.in_domain(t, y) {
            return Err(MosaicError::DomainError {
                t: t.to_f64_lossy(),
                y1: y[0].to_f64_lossy(),
                y2: y[1].to_f64_lossy(),
            });
        }
        match self.jet_mode() {
            JetMode::FiniteDifference => Ok(fd_jets(self, t, y)),
            JetMode::AnalyticOnly => self.analytic_jets(t, y).ok_or(MosaicError::JetUnavailable),
            JetMode::Analytic => Ok(self.analytic_jets(t, y).unwrap_or_else(|| fd_jets(self, t, y))),
        }
    }
}

impl<T: Real, C: Chart<T> + ?Sized> Chart<T> for Arc<C> {
    fn eval(&self, t: T, y: [T; 2]) -> Vec3<T> {
        (**self).eval(t, y)
    }
    fn analytic_jets(&self, t: T, y: [T; 2]) -> Option<ChartJets<T>> {
        (**self).analytic_jets(t, y)
    }
    fn jet_mode(&self) -> JetMode {
        (**self).jet_mode()
    }
    fn in_domain(&self, t: T, y: [T; 2]) -> bool {
        (**self).in_domain(t, y)
    }
}

/// Jets by fourth-order central differences of `eval`.
pub fn fd_jets<T: Real, C: Chart<T> + ?Sized>(chart: &C, t: T, y: [T; 2]) -> ChartJets<T> {
    let f = |t: T, y: [T; 2]| chart.eval(t, y).to_vec();
    let p = fd::partials(&f, t, y, T::c(fd::FIRST_STEP));
    let h = fd::hessian(&f, t, y, T::c(fd::SECOND_STEP));
    let v3 = |v: &Vec<T>| [v[0], v[1], v[2]];
    let mut dd = [[[T::zero(); 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            dd[a][b] = v3(&h[a][b]);
        }
    }
    ChartJets { z: chart.eval(t, y), d: [v3(&p[0]), v3(&p[1]), v3(&p[2])], dd }
}

/// One Fourier mode a·cos(m y¹ + n y² + w t + φ) of a radial perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierMode<T> {
    pub amplitude: T,
    pub m: T,
    pub n: T,
    pub w: T,
    pub phase: T,
}

/// Z(t,y) = ρ(t,y) · diag(1, 1, 1+κt) · e(y¹, y² + Ωt), with e the unit-sphere point at
/// polar angle y¹ and azimuth y² + Ωt, and ρ = 1 + Σ Fourier modes.
///
/// Covers the unit sphere, the stretching spheroid (κ = 1), the rotating sphere (Ω = 2π),
/// the helical spheroid (κ = 1, Ω = 2π) and randomly perturbed spheres.
#[derive(Debug, Clone, PartialEq)]
pub struct SpheroidalChart<T> {
    pub stretch: T,
    pub spin: T,
    pub modes: Vec<FourierMode<T>>,
    pub mode: JetMode,
}

impl<T: Real> SpheroidalChart<T> {
    pub fn new(stretch: T, spin: T) -> Self {
        Self { stretch, spin, modes: Vec::new(), mode: JetMode::Analytic }
    }

    pub fn unit_sphere() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn stretching_spheroid() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn rotating_sphere() -> Self {
        Self::new(T::zero(), T::PI() + T::PI())
    }

    pub fn helical_spheroid() -> Self {
        Self::new(T::one(), T::PI() + T::PI())
    }

    pub fn with_modes(mut self, modes: Vec<FourierMode<T>>) -> Self {
        self.modes = modes;
        self
    }

    pub fn with_jet_mode(mut self, mode: JetMode) -> Self {
        self.mode = mode;
        self
    }

    /// ρ and its first/second partials along (t, y¹, y²).
    fn radius(&self, t: T, y: [T; 2]) -> (T, [T; 3], [[T; 3]; 3]) {
        let mut r = T::one();
        let mut dr = [T::zero(); 3];
        let mut ddr = [[T::zero(); 3]; 3];
        for md in &self.modes {
            let th = md.m * y[0] + md.n * y[1] + md.w * t + md.phase;
            let g = [md.w, md.m, md.n];
            let (s, c) = th.sin_cos();
            r += md.amplitude * c;
            for a in 0..3 {
                dr[a] -= md.amplitude * s * g[a];
                for b in 0..3 {
                    ddr[a][b] -= md.amplitude * c * g[a] * g[b];
                }
            }
        }
        (r, dr, ddr)
    }
}

impl<T: Real> Chart<T> for SpheroidalChart<T> {
    fn eval(&self, t: T, y: [T; 2]) -> Vec3<T> {
        let (r, _, _) = self.radius(t, y);
        let phi = y[1] + self.spin * t;
        let (s1, c1) = y[0].sin_cos();
        let (sp, cp) = phi.sin_cos();
        [r * s1 * cp, r * s1 * sp, r * (T::one() + self.stretch * t) * c1]
    }

    fn analytic_jets(&self, t: T, y: [T; 2]) -> Option<ChartJets<T>> {
        let z = T::zero();
        let phi = y[1] + self.spin * t;
        let (s1, c1) = y[0].sin_cos();
        let (sp, cp) = phi.sin_cos();
        // Unit-sphere point and its partials in (y¹, φ).
        let e = [s1 * cp, s1 * sp, c1];
        let e_1 = [c1 * cp, c1 * sp, -s1];
        let e_p = [-s1 * sp, s1 * cp, z];
        let e_11 = [-s1 * cp, -s1 * sp, -c1];
        let e_1p = [-c1 * sp, c1 * cp, z];
        let e_pp = [-s1 * cp, -s1 * sp, z];
        // ∂(y¹, φ)/∂(t, y¹, y²).
        let jac = [[z, self.spin], [T::one(), z], [z, T::one()]];
        let de = |a: usize| -> Vec3<T> {
            let mut o = [z; 3];
            for k in 0..3 {
                o[k] = jac[a][0] * e_1[k] + jac[a][1] * e_p[k];
            }
            o
        };
        let dde = |a: usize, b: usize| -> Vec3<T> {
            let mut o = [z; 3];
            for k in 0..3 {
                o[k] = jac[a][0] * jac[b][0] * e_11[k]
                    + (jac[a][0] * jac[b][1] + jac[a][1] * jac[b][0]) * e_1p[k]
                    + jac[a][1] * jac[b][1] * e_pp[k];
            }
            o
        };
        // W = D(t) e with D = diag(1, 1, 1 + κt).
        let dz = T::one() + self.stretch * t;
        let dmat = |v: Vec3<T>| [v[0], v[1], dz * v[2]];
        let ddot = |a: usize, v: Vec3<T>| if a == 0 { [z, z, self.stretch * v[2]] } else { [z; 3] };
        let w = dmat(e);
        let mut wa = [[z; 3]; 3];
        let mut wab = [[[z; 3]; 3]; 3];
        for a in 0..3 {
            let x = dmat(de(a));
            let y0 = ddot(a, e);
            for k in 0..3 {
                wa[a][k] = x[k] + y0[k];
            }
        }
        for a in 0..3 {
            for b in 0..3 {
                let x = dmat(dde(a, b));
                let p = ddot(a, de(b));
                let q = ddot(b, de(a));
                for k in 0..3 {
                    wab[a][b][k] = x[k] + p[k] + q[k];
                }
            }
        }
        let (r, dr, ddr) = self.radius(t, y);
        let mut out = ChartJets { z: [z; 3], d: [[z; 3]; 3], dd: [[[z; 3]; 3]; 3] };
        for k in 0..3 {
            out.z[k] = r * w[k];
            for a in 0..3 {
                out.d[a][k] = dr[a] * w[k] + r * wa[a][k];
                for b in 0..3 {
                    out.dd[a][b][k] = ddr[a][b] * w[k] + dr[a] * wa[b][k] + dr[b] * wa[a][k] + r * wab[a][b][k];
                }
            }
        }
        Some(out)
    }

    fn jet_mode(&self) -> JetMode {
        self.mode
    }

    fn in_domain(&self, _t: T, y: [T; 2]) -> bool {
        y[0] > T::zero() && y[0] < T::PI()
    }
}

/// Flat plane Z = (y¹, y², 0) + t·velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneChart<T> {
    pub velocity: Vec3<T>,
}

impl<T: Real> PlaneChart<T> {
    pub fn stationary() -> Self {
        Self { velocity: [T::zero(); 3] }
    }
}

impl<T: Real> Chart<T> for PlaneChart<T> {
    fn eval(&self, t: T, y: [T; 2]) -> Vec3<T> {
        [y[0] + t * self.velocity[0], y[1] + t * self.velocity[1], t * self.velocity[2]]
    }

    fn analytic_jets(&self, t: T, y: [T; 2]) -> Option<ChartJets<T>> {
        let (z, o) = (T::zero(), T::one());
        Some(ChartJets {
            z: self.eval(t, y),
            d: [self.velocity, [o, z, z], [z, o, z]],
            dd: [[[z; 3]; 3]; 3],
        })
    }
}

type ChartFn<T> = dyn Fn(T, [T; 2]) -> Vec3<T> + Send + Sync;

/// Chart given by a closure; jets come from finite differences.
#[derive(Clone)]
pub struct FnChart<T> {
    f: Arc<ChartFn<T>>,
}

impl<T: Real> FnChart<T> {
    pub fn new(f: impl Fn(T, [T; 2]) -> Vec3<T> + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f) }
    }

    /// Reparametrization Z_B(t, y) = Z_A(t, φ(t, y)).
    pub fn reparametrized<C>(chart: C, map: impl Fn(T, [T; 2]) -> [T; 2] + Send + Sync + 'static) -> Self
    where
        C: Chart<T> + 'static,
    {
        Self::new(move |t, y| chart.eval(t, map(t, y)))
    }
}

impl<T: Real> Chart<T> for FnChart<T> {
    fn eval(&self, t: T, y: [T; 2]) -> Vec3<T> {
        (self.f)(t, y)
    }

    fn jet_mode(&self) -> JetMode {
        JetMode::FiniteDifference
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perturbed() -> SpheroidalChart<f64> {
        SpheroidalChart::new(0.4, 0.7).with_modes(vec![
            FourierMode { amplitude: 0.05, m: 2.0, n: 1.0, w: 1.3, phase: 0.2 },
            FourierMode { amplitude: 0.03, m: 1.0, n: 3.0, w: -0.6, phase: 1.1 },
        ])
    }

    #[test]
    fn analytic_jets_match_finite_differences() {
        let c = perturbed();
        let (t, y) = (0.37, [1.1, 2.3]);
        let a = c.analytic_jets(t, y).unwrap();
        let f = fd_jets(&c, t, y);
        for k in 0..3 {
            assert!((a.z[k] - f.z[k]).abs() < 1e-15);
            for i in 0..3 {
                assert!((a.d[i][k] - f.d[i][k]).abs() < 1e-9, "d[{i}][{k}]");
                for j in 0..3 {
                    assert!((a.dd[i][j][k] - f.dd[i][j][k]).abs() < 1e-7, "dd[{i}][{j}][{k}]");
                }
            }
        }
    }

    #[test]
    fn analytic_only_without_jets_fails() {
        struct Bare;
        impl Chart<f64> for Bare {
            fn eval(&self, _t: f64, y: [f64; 2]) -> Vec3<f64> {
                [y[0], y[1], 0.0]
            }
            fn jet_mode(&self) -> JetMode {
                JetMode::AnalyticOnly
            }
        }
        assert_eq!(Bare.jets(0.0, [0.0, 0.0]), Err(MosaicError::JetUnavailable));
    }

    #[test]
    fn domain_excludes_poles() {
        let c = SpheroidalChart::<f64>::unit_sphere();
        assert!(matches!(c.jets(0.0, [0.0, 1.0]), Err(MosaicError::DomainError { .. })));
    }
}
