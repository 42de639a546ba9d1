//! Explicit 2×2 rates of instantaneous vector and 2-tensor fields.

use crate::bundle::TangentialJet;
use crate::derivatives::DerivativeKind;
use crate::error::{MosaicError, Result};
use crate::geometry::{KinematicState, MaterialData, SurfaceFrame};
use crate::scalar::Real;
use crate::tensor::{Mat2, Tensor, Vec2};

fn check_rank<T: Real>(jet: &TangentialJet<T>, n: usize) -> Result<()> {
    jet.check()?;
    if jet.rank() != n {
        return Err(MosaicError::RankMismatch { expected: n, found: jet.rank() });
    }
    Ok(())
}

fn mv<T: Real>(m: &Mat2<T>, r: &Vec2<T>) -> Vec2<T> {
    [m[0][0] * r[0] + m[0][1] * r[1], m[1][0] * r[0] + m[1][1] * r[1]]
}

/// ṙ^i = ∂_t r^i + u^k(∂_k r^i + Γ^i_{kj} r^j) + B^i_j r^j.
fn vector_dot<T: Real>(jet: &TangentialJet<T>, f: &SurfaceFrame<T>, kin: &KinematicState<T>, mat: &MaterialData<T>) -> Vec2<T> {
    let r = [jet.value[0], jet.value[1]];
    let b = kin.b_mixed(f);
    let br = mv(&b, &r);
    let mut out = [T::zero(); 2];
    for i in 0..2 {
        let mut cov = T::zero();
        for k in 0..2 {
            let g = &f.christoffel[i][k];
            cov += mat.u[k] * (jet.dy[k][i] + g[0] * r[0] + g[1] * r[1]);
        }
        out[i] = jet.dt[i] + cov + br[i];
    }
    out
}

/// Instantaneous rate of a vector field: ṙ, 𝔍r, ṙ − B_m r or ṙ + B_mᵀ r.
pub fn instantaneous_vector_rate<T: Real>(
    kind: &DerivativeKind,
    jet: &TangentialJet<T>,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<Tensor<T>> {
    check_rank(jet, 1)?;
    let r = [jet.value[0], jet.value[1]];
    let rd = vector_dot(jet, f, kin, mat);
    let out = match kind {
        DerivativeKind::Material => rd,
        DerivativeKind::Jaumann => {
            // *r = −ε r
            let e = f.eps_mixed();
            let er = mv(&e, &r);
            let h = T::c(0.5) * mat.rot_vm;
            [rd[0] + h * er[0], rd[1] + h * er[1]]
        }
        DerivativeKind::Convected(w) if w.n() == 1 => {
            if w.is_sharp(1) {
                let m = mv(&mat.bm_mixed(f), &r);
                [rd[0] - m[0], rd[1] - m[1]]
            } else {
                let m = mv(&mat.bm_transposed_mixed(f), &r);
                [rd[0] + m[0], rd[1] + m[1]]
            }
        }
        DerivativeKind::Convected(w) => return Err(MosaicError::RankMismatch { expected: 1, found: w.n() }),
        DerivativeKind::Truesdell => {
            return Err(MosaicError::UnknownKind("truesdell is defined for 2-tensors only".into()))
        }
    };
    Ok(Tensor::vector(&out))
}

fn two_dot<T: Real>(jet: &TangentialJet<T>, f: &SurfaceFrame<T>, kin: &KinematicState<T>, mat: &MaterialData<T>) -> Mat2<T> {
    let q = to_mat(&jet.value);
    let b = kin.b_mixed(f);
    let mut out = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut cov = T::zero();
            for k in 0..2 {
                let gi = &f.christoffel[i][k];
                let gj = &f.christoffel[j][k];
                let conn = gi[0] * q[0][j] + gi[1] * q[1][j] + gj[0] * q[i][0] + gj[1] * q[i][1];
                cov += mat.u[k] * (jet.dy[k].get(&[i, j]) + conn);
            }
            let bq = b[i][0] * q[0][j] + b[i][1] * q[1][j] + b[j][0] * q[i][0] + b[j][1] * q[i][1];
            out[i][j] = jet.dt.get(&[i, j]) + cov + bq;
        }
    }
    out
}

fn to_mat<T: Real>(q: &Tensor<T>) -> Mat2<T> {
    [[q.get(&[0, 0]), q.get(&[0, 1])], [q.get(&[1, 0]), q.get(&[1, 1])]]
}

/// M·q (first slot) and q·Mᵀ (second slot).
fn left<T: Real>(m: &Mat2<T>, q: &Mat2<T>) -> Mat2<T> {
    let mut o = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] = m[i][0] * q[0][j] + m[i][1] * q[1][j];
        }
    }
    o
}

fn right<T: Real>(m: &Mat2<T>, q: &Mat2<T>) -> Mat2<T> {
    let mut o = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] = q[i][0] * m[j][0] + q[i][1] * m[j][1];
        }
    }
    o
}

fn ordered_rate<T: Real>(
    word: (bool, bool),
    q: &Mat2<T>,
    qd: &Mat2<T>,
    f: &SurfaceFrame<T>,
    mat: &MaterialData<T>,
) -> Mat2<T> {
    let bm = mat.bm_mixed(f);
    let bmt = mat.bm_transposed_mixed(f);
    let (s1, m1) = if word.0 { (-T::one(), bm) } else { (T::one(), bmt) };
    let (s2, m2) = if word.1 { (-T::one(), bm) } else { (T::one(), bmt) };
    let a = left(&m1, q);
    let c = right(&m2, q);
    let mut o = *qd;
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] += s1 * a[i][j] + s2 * c[i][j];
        }
    }
    o
}

/// div v_m − ν tr II + ζνν̇.
pub fn truesdell_factor<T: Real>(f: &SurfaceFrame<T>, kin: &KinematicState<T>, mat: &MaterialData<T>) -> T {
    let div = mat.grad_vm[0][0] + mat.grad_vm[1][1];
    let mut tr = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            tr += f.g_inv[i][j] * f.shape[i][j];
        }
    }
    div - kin.nu * tr + kin.zeta * kin.nu * mat.nu_dot
}

/// Ľ°q = Ľ♯♯q + (div v_m − ν tr II + ζνν̇) q.
pub fn truesdell_rate<T: Real>(
    jet: &TangentialJet<T>,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<Tensor<T>> {
    check_rank(jet, 2)?;
    let q = to_mat(&jet.value);
    let up = ordered_rate((true, true), &q, &two_dot(jet, f, kin, mat), f, mat);
    let s = truesdell_factor(f, kin, mat);
    Ok(Tensor::from_fn(2, 2, |ix| up[ix[0]][ix[1]] + s * q[ix[0]][ix[1]]))
}

/// Instantaneous rate of a 2-tensor field: q̇, 𝔍q, the four convected rates or Truesdell.
pub fn instantaneous_two_tensor_rate<T: Real>(
    kind: &DerivativeKind,
    jet: &TangentialJet<T>,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<Tensor<T>> {
    check_rank(jet, 2)?;
    let q = to_mat(&jet.value);
    let qd = two_dot(jet, f, kin, mat);
    let out = match kind {
        DerivativeKind::Material => qd,
        DerivativeKind::Jaumann => {
            let e = f.eps_mixed();
            let h = T::c(0.5) * mat.rot_vm;
            let a = left(&e, &q);
            let c = right(&e, &q);
            let mut o = qd;
            for i in 0..2 {
                for j in 0..2 {
                    o[i][j] += h * (a[i][j] + c[i][j]);
                }
            }
            o
        }
        DerivativeKind::Convected(w) if w.n() == 2 => ordered_rate((w.is_sharp(1), w.is_sharp(2)), &q, &qd, f, mat),
        DerivativeKind::Convected(w) => return Err(MosaicError::RankMismatch { expected: 2, found: w.n() }),
        DerivativeKind::Truesdell => return truesdell_rate(jet, f, kin, mat),
    };
    Ok(Tensor::from_fn(2, 2, |ix| out[ix[0]][ix[1]]))
}

/// Material acceleration (a_m, λ_m) with a_m = ∂_t v_m + ∇_u v_m + B v_m − ν b_m and λ_m = ν̇ + ⟨v_m, b_m⟩.
pub fn material_acceleration<T: Real>(
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> (Vec2<T>, T) {
    let gu = mv(&mat.grad_vm, &mat.u);
    let bv = mv(&kin.b_mixed(f), &mat.vm);
    let bm = mat.bm_vector(f);
    let mut a = [T::zero(); 2];
    for i in 0..2 {
        a[i] = mat.dt_vm[i] + gu[i] + bv[i] - kin.nu * bm[i];
    }
    let lambda = mat.nu_dot + mat.vm[0] * mat.bm_form[0] + mat.vm[1] * mat.bm_form[1];
    (a, lambda)
}
