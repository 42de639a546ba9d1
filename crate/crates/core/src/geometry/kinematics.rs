//! Observer and material kinematics at a point.

use std::sync::Arc;

use crate::error::Result;
use crate::fd;
use crate::geometry::chart::{Chart, ChartJets};
use crate::geometry::frame::{frame_from_jets, SurfaceFrame};
use crate::scalar::Real;
use crate::tensor::{dot3, Mat2, Vec2, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicState<T> {
    /// V = ∂_t Z.
    pub velocity: Vec3<T>,
    /// Tangential observer velocity v^i.
    pub v: Vec2<T>,
    pub nu: T,
    /// ζ = 1/(1+ν²).
    pub zeta: T,
    /// B_ij = ⟨∂_j V, ∂_i Z⟩ = v_{i|j} − ν II_ij.
    pub b_mat: Mat2<T>,
    /// b_i = ⟨∂_i V, N⟩ = ν_{|i} + II_ij v^j.
    pub b_form: Vec2<T>,
    /// Tangential observer acceleration a^i.
    pub accel: Vec2<T>,
    /// Normal observer acceleration λ.
    pub lambda: T,
    /// ∂_t ν = λ − ⟨b, v⟩.
    pub dt_nu: T,
    /// ∂_k ν = b_k − II_kj v^j.
    pub grad_nu: Vec2<T>,
    /// ∂_a v^i along (t, y¹, y²), indexed `[a][i]`.
    pub dv: [Vec2<T>; 3],
    /// ∂_t g_ij.
    pub dt_g: Mat2<T>,
}

pub fn kinematics_from_jets<T: Real>(j: &ChartJets<T>, f: &SurfaceFrame<T>) -> KinematicState<T> {
    let vel = j.d[0];
    let w = [dot3(&vel, &f.basis[0]), dot3(&vel, &f.basis[1])];
    let v = f.raise(&w);
    let nu = dot3(&vel, &f.normal);
    let zeta = T::one() / (T::one() + nu * nu);
    let mut b_mat = [[T::zero(); 2]; 2];
    let mut b_form = [T::zero(); 2];
    for i in 0..2 {
        for k in 0..2 {
            b_mat[i][k] = dot3(&j.dd[0][k + 1], &f.basis[i]);
        }
        b_form[i] = dot3(&j.dd[0][i + 1], &f.normal);
    }
    let acc = j.dd[0][0];
    let accel = f.raise(&[dot3(&acc, &f.basis[0]), dot3(&acc, &f.basis[1])]);
    let lambda = dot3(&acc, &f.normal);
    let dt_nu = lambda - (b_form[0] * v[0] + b_form[1] * v[1]);
    let mut grad_nu = [T::zero(); 2];
    for k in 0..2 {
        grad_nu[k] = b_form[k] - (f.shape[k][0] * v[0] + f.shape[k][1] * v[1]);
    }
    // Partials of v^i = g^{ij} ⟨V, ∂_j Z⟩.
    let mut dv = [[T::zero(); 2]; 3];
    let mut dt_g = [[T::zero(); 2]; 2];
    for a in 0..3 {
        let mut dg = [[T::zero(); 2]; 2];
        let mut dw = [T::zero(); 2];
        for p in 0..2 {
            for q in 0..2 {
                dg[p][q] = dot3(&j.dd[p + 1][a], &f.basis[q]) + dot3(&f.basis[p], &j.dd[q + 1][a]);
            }
            dw[p] = dot3(&j.dd[0][a], &f.basis[p]) + dot3(&vel, &j.dd[p + 1][a]);
        }
        if a == 0 {
            dt_g = dg;
        }
        // ∂g⁻¹ = −g⁻¹ ∂g g⁻¹.
        let gi = &f.g_inv;
        for i in 0..2 {
            let mut acc_i = T::zero();
            for k in 0..2 {
                acc_i += gi[i][k] * dw[k];
                let mut dgi = T::zero();
                for p in 0..2 {
                    for q in 0..2 {
                        dgi -= gi[i][p] * dg[p][q] * gi[q][k];
                    }
                }
                acc_i += dgi * w[k];
            }
            dv[a][i] = acc_i;
        }
    }
    KinematicState { velocity: vel, v, nu, zeta, b_mat, b_form, accel, lambda, dt_nu, grad_nu, dv, dt_g }
}

pub fn observer_kinematics<T: Real, C: Chart<T> + ?Sized>(chart: &C, t: T, y: [T; 2]) -> Result<KinematicState<T>> {
    let j = chart.jets(t, y)?;
    let f = frame_from_jets(&j)?;
    Ok(kinematics_from_jets(&j, &f))
}

impl<T: Real> KinematicState<T> {
    /// B^i_j.
    pub fn b_mixed(&self, f: &SurfaceFrame<T>) -> Mat2<T> {
        f.raise_first(&self.b_mat)
    }

    /// (∇v)^i_j = B^i_j + ν II^i_j.
    pub fn grad_v(&self, f: &SurfaceFrame<T>) -> Mat2<T> {
        let b = self.b_mixed(f);
        let ii = f.raise_first(&f.shape);
        let mut o = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] = b[i][j] + self.nu * ii[i][j];
            }
        }
        o
    }

    /// (∇v)^i_j = ∂_j v^i + Γ^i_jk v^k from the velocity partials.
    pub fn grad_v_from_partials(&self, f: &SurfaceFrame<T>) -> Mat2<T> {
        covariant_gradient(f, &self.v, &[self.dv[1], self.dv[2]])
    }
}

/// (∇w)^i_k = ∂_k w^i + Γ^i_kj w^j, with `dy[k][i] = ∂_k w^i`.
pub fn covariant_gradient<T: Real>(f: &SurfaceFrame<T>, w: &Vec2<T>, dy: &[Vec2<T>; 2]) -> Mat2<T> {
    let mut o = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            o[i][k] = dy[k][i] + f.christoffel[i][k][0] * w[0] + f.christoffel[i][k][1] * w[1];
        }
    }
    o
}

/// Tangential vector field value with its partials along t and yᵏ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityJet<T> {
    pub value: Vec2<T>,
    pub dt: Vec2<T>,
    /// `dy[k][i] = ∂_k w^i`.
    pub dy: [Vec2<T>; 2],
}

impl<T: Real> VelocityJet<T> {
    pub fn constant(value: Vec2<T>) -> Self {
        Self { value, dt: [T::zero(); 2], dy: [[T::zero(); 2]; 2] }
    }

    /// Jet of a closure by Richardson-extrapolated central differences.
    pub fn from_fn(f: &dyn Fn(T, [T; 2]) -> Vec2<T>, t: T, y: [T; 2]) -> Self {
        let g = |t: T, y: [T; 2]| f(t, y).to_vec();
        let p = fd::partials_richardson(&g, t, y, T::c(fd::FIELD_STEP));
        Self { value: f(t, y), dt: [p[0][0], p[0][1]], dy: [[p[1][0], p[1][1]], [p[2][0], p[2][1]]] }
    }
}

pub type VelocityFn<T> = dyn Fn(T, [T; 2]) -> VelocityJet<T> + Send + Sync;

/// Tangential material velocity v_m in the observer chart.
#[derive(Clone)]
pub enum MaterialMotion<T> {
    /// The observer is Lagrangian: v_m = v.
    Lagrangian,
    Field(Arc<VelocityFn<T>>),
}

impl<T: Real> MaterialMotion<T> {
    pub fn field(f: impl Fn(T, [T; 2]) -> VelocityJet<T> + Send + Sync + 'static) -> Self {
        Self::Field(Arc::new(f))
    }

    pub fn jet(&self, kin: &KinematicState<T>, t: T, y: [T; 2]) -> VelocityJet<T> {
        match self {
            Self::Lagrangian => VelocityJet { value: kin.v, dt: kin.dv[0], dy: [kin.dv[1], kin.dv[2]] },
            Self::Field(f) => f(t, y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialData<T> {
    pub vm: Vec2<T>,
    /// ∂_t v_m^i in the observer chart.
    pub dt_vm: Vec2<T>,
    /// u = v_m − v.
    pub u: Vec2<T>,
    /// (∇v_m)^i_k.
    pub grad_vm: Mat2<T>,
    /// (∇u)^i_k = (∇v_m − ∇v)^i_k.
    pub grad_u: Mat2<T>,
    /// (B_m)_ik = (∇v_m)_ik − ν II_ik.
    pub bm_mat: Mat2<T>,
    /// b_m = ∇ν + II v_m (covariant).
    pub bm_form: Vec2<T>,
    /// ν̇ = ∂_t ν + ∇_u ν.
    pub nu_dot: T,
    /// Ľ♯v_m = ∂_t v_m + ∇_u v_m − ∇_{v_m} u.
    pub lie_vm: Vec2<T>,
    /// rot v_m = −⟨∇v_m, ε⟩.
    pub rot_vm: T,
}

pub fn material_kinematics<T: Real>(
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    jet: &VelocityJet<T>,
) -> MaterialData<T> {
    let vm = jet.value;
    let u = [vm[0] - kin.v[0], vm[1] - kin.v[1]];
    let grad_vm = covariant_gradient(f, &vm, &jet.dy);
    let grad_v = kin.grad_v(f);
    let mut grad_u = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            grad_u[i][k] = grad_vm[i][k] - grad_v[i][k];
        }
    }
    let gl = f.lower_first(&grad_vm);
    let mut bm_mat = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            bm_mat[i][k] = gl[i][k] - kin.nu * f.shape[i][k];
        }
    }
    let mut bm_form = [T::zero(); 2];
    for k in 0..2 {
        bm_form[k] = kin.grad_nu[k] + f.shape[k][0] * vm[0] + f.shape[k][1] * vm[1];
    }
    let nu_dot = kin.dt_nu + u[0] * kin.grad_nu[0] + u[1] * kin.grad_nu[1];
    let mut lie_vm = [T::zero(); 2];
    for i in 0..2 {
        lie_vm[i] = jet.dt[i] + grad_vm[i][0] * u[0] + grad_vm[i][1] * u[1]
            - (grad_u[i][0] * vm[0] + grad_u[i][1] * vm[1]);
    }
    let eps_up = f.raise_both(&f.eps);
    let mut pair = T::zero();
    for i in 0..2 {
        for k in 0..2 {
            pair += gl[i][k] * eps_up[i][k];
        }
    }
    MaterialData { vm, dt_vm: jet.dt, u, grad_vm, grad_u, bm_mat, bm_form, nu_dot, lie_vm, rot_vm: -pair }
}

impl<T: Real> MaterialData<T> {
    /// (B_m)^i_k.
    pub fn bm_mixed(&self, f: &SurfaceFrame<T>) -> Mat2<T> {
        f.raise_first(&self.bm_mat)
    }

    /// (B_mᵀ)^i_k = g^{ia} (B_m)_ka.
    pub fn bm_transposed_mixed(&self, f: &SurfaceFrame<T>) -> Mat2<T> {
        f.raise_first_transposed(&self.bm_mat)
    }

    /// b_m^i.
    pub fn bm_vector(&self, f: &SurfaceFrame<T>) -> Vec2<T> {
        f.raise(&self.bm_form)
    }

    /// (Ľ♯v_m)_k.
    pub fn lie_vm_flat(&self, f: &SurfaceFrame<T>) -> Vec2<T> {
        f.lower(&self.lie_vm)
    }
}

/// Frame, observer kinematics and material data at one event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalState<T> {
    pub t: T,
    pub y: [T; 2],
    pub jets: ChartJets<T>,
    pub frame: SurfaceFrame<T>,
    pub kin: KinematicState<T>,
    pub mat: MaterialData<T>,
}

impl<T: Real> LocalState<T> {
    pub fn evaluate<C: Chart<T> + ?Sized>(chart: &C, motion: &MaterialMotion<T>, t: T, y: [T; 2]) -> Result<Self> {
        let jets = chart.jets(t, y)?;
        let frame = frame_from_jets(&jets)?;
        let kin = kinematics_from_jets(&jets, &frame);
        let mat = material_kinematics(&frame, &kin, &motion.jet(&kin, t, y));
        Ok(Self { t, y, jets, frame, kin, mat })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::SpheroidalChart;
    use std::f64::consts::PI;

    #[test]
    fn rotating_sphere_lagrangian() {
        let c = SpheroidalChart::<f64>::rotating_sphere();
        let y1 = 0.8;
        let s = LocalState::evaluate(&c, &MaterialMotion::Lagrangian, 0.3, [y1, 1.0]).unwrap();
        assert!(s.kin.nu.abs() < 1e-14);
        assert!((s.kin.zeta - 1.0).abs() < 1e-14);
        for i in 0..2 {
            for k in 0..2 {
                let expect = -2.0 * PI * y1.cos() * s.frame.eps[i][k];
                assert!((s.mat.bm_mat[i][k] - expect).abs() < 1e-12);
            }
        }
        assert!((s.mat.rot_vm - 4.0 * PI * y1.cos()).abs() < 1e-12);
        assert!(s.mat.u[0].abs() < 1e-15 && s.mat.u[1].abs() < 1e-15);
    }

    #[test]
    fn stretching_spheroid_bm() {
        let c = SpheroidalChart::<f64>::stretching_spheroid();
        let (t, y1) = (0.6, 1.1);
        let s = LocalState::evaluate(&c, &MaterialMotion::Lagrangian, t, [y1, 0.2]).unwrap();
        let s2 = y1.sin().powi(2);
        let bm = s.mat.bm_mixed(&s.frame);
        assert!((bm[0][0] - (1.0 + t) * s2 / (1.0 + t * (2.0 + t) * s2)).abs() < 1e-13);
        assert!(bm[0][1].abs() < 1e-13 && bm[1][0].abs() < 1e-13 && bm[1][1].abs() < 1e-13);
    }

    #[test]
    fn eulerian_rotating_sphere_relative_velocity() {
        let c = SpheroidalChart::<f64>::unit_sphere();
        let motion = MaterialMotion::field(|_t, _y| VelocityJet::constant([0.0, 2.0 * PI]));
        let s = LocalState::evaluate(&c, &motion, 0.1, [0.7, 0.4]).unwrap();
        assert_eq!(s.mat.u, [0.0, 2.0 * PI]);
    }

    #[test]
    fn grad_v_two_ways() {
        let c = SpheroidalChart::<f64>::helical_spheroid();
        let s = LocalState::evaluate(&c, &MaterialMotion::Lagrangian, 0.4, [0.9, 0.3]).unwrap();
        let a = s.kin.grad_v(&s.frame);
        let b = s.kin.grad_v_from_partials(&s.frame);
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[i][j]).abs() < 1e-12);
            }
        }
    }
}
