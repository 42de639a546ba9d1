//! Q-tensor map, projection, eigen-decomposition and field diagnostics.

use serde::Serialize;

use crate::derivatives::eps_pairing;
use crate::error::{MosaicError, Result};
use crate::geometry::SurfaceFrame;
use crate::scalar::Real;
use crate::tensor::{Tensor, Vec2};

/// ‖r‖ for a contravariant vector.
pub fn vector_norm<T: Real>(f: &SurfaceFrame<T>, r: &Vec2<T>) -> T {
    f.inner(r, r).sqrt()
}

/// ρ(r) = (2/‖r‖)(r ⊗ r − ‖r‖²/2 g⁻¹).
pub fn q_tensor_map<T: Real>(f: &SurfaceFrame<T>, r: &Vec2<T>) -> Result<Tensor<T>> {
    let n = vector_norm(f, r);
    if n == T::zero() || !n.is_finite() {
        return Err(MosaicError::ZeroField);
    }
    let h = T::c(0.5) * n * n;
    let s = T::c(2.0) / n;
    Ok(Tensor::from_fn(2, 2, |ix| s * (r[ix[0]] * r[ix[1]] - h * f.g_inv[ix[0]][ix[1]])))
}

/// g_ij q^{ij}.
pub fn trace<T: Real>(f: &SurfaceFrame<T>, q: &Tensor<T>) -> T {
    let mut s = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            s += f.g[i][j] * q.get(&[i, j]);
        }
    }
    s
}

/// P_Q q = ½(q + qᵀ − tr(q) g⁻¹).
pub fn project_q<T: Real>(f: &SurfaceFrame<T>, q: &Tensor<T>) -> Tensor<T> {
    let tr = trace(f, q);
    let h = T::c(0.5);
    Tensor::from_fn(2, 2, |ix| h * (q.get(&[ix[0], ix[1]]) + q.get(&[ix[1], ix[0]]) - tr * f.g_inv[ix[0]][ix[1]]))
}

/// √(q^{ij} q_ij).
pub fn tensor_norm<T: Real>(f: &SurfaceFrame<T>, q: &Tensor<T>) -> T {
    let mut s = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    s += f.g[i][k] * f.g[j][l] * q.get(&[i, j]) * q.get(&[k, l]);
                }
            }
        }
    }
    s.max(T::zero()).sqrt()
}

/// Eigenpairs of a symmetric contravariant 2-tensor as a self-adjoint map, ascending.
///
/// Eigenvectors are returned in contravariant components with unit length.
pub fn symmetric_eigen<T: Real>(f: &SurfaceFrame<T>, q: &Tensor<T>) -> [(T, Vec2<T>); 2] {
    // Orthonormal frame e_a = L⁻ᵀ with g = L Lᵀ.
    let l11 = f.g[0][0].sqrt();
    let l21 = f.g[1][0] / l11;
    let l22 = (f.g[1][1] - l21 * l21).sqrt();
    // Components in the orthonormal frame: q̂ = Lᵀ q L.
    let lt = [[l11, l21], [T::zero(), l22]];
    let mut qh = [[T::zero(); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let mut s = T::zero();
            for i in 0..2 {
                for j in 0..2 {
                    s += lt[a][i] * q.get(&[i, j]) * lt[b][j];
                }
            }
            qh[a][b] = s;
        }
    }
    let (a, b, d) = (qh[0][0], T::c(0.5) * (qh[0][1] + qh[1][0]), qh[1][1]);
    let mean = T::c(0.5) * (a + d);
    let rad = (T::c(0.25) * (a - d) * (a - d) + b * b).sqrt();
    let (lo, hi) = (mean - rad, mean + rad);
    let vec_for = |lam: T| -> Vec2<T> {
        let v = if (a - lam).abs() >= (d - lam).abs() { [-b, a - lam] } else { [d - lam, -b] };
        let v = if v[0] == T::zero() && v[1] == T::zero() {
            if lam == lo {
                [T::one(), T::zero()]
            } else {
                [T::zero(), T::one()]
            }
        } else {
            v
        };
        let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
        let v = [v[0] / n, v[1] / n];
        // Back to coordinates: r = L⁻ᵀ v̂.
        let r1 = v[1] / l22;
        let r0 = (v[0] - l21 * r1) / l11;
        [r0, r1]
    };
    [(lo, vec_for(lo)), (hi, vec_for(hi))]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics<T> {
    pub norm: T,
    /// φ¹, φ² of the vector, or of the leading eigenvector of a symmetric 2-tensor.
    pub phi: Option<[T; 2]>,
    pub trace: Option<T>,
    /// ⟨q, ε⟩.
    pub asym: Option<T>,
    pub eigenvalues: Option<[T; 2]>,
}

/// (−1)^i √g_ii ‖r‖ cos φ^i = r_i.
pub fn tangent_angles<T: Real>(f: &SurfaceFrame<T>, r: &Vec2<T>) -> Result<[T; 2]> {
    let n = vector_norm(f, r);
    if n == T::zero() {
        return Err(MosaicError::ZeroField);
    }
    let low = f.lower(r);
    let c1 = -low[0] / (f.g[0][0].sqrt() * n);
    let c2 = low[1] / (f.g[1][1].sqrt() * n);
    let clamp = |c: T| c.max(-T::one()).min(T::one()).acos();
    Ok([clamp(c1), clamp(c2)])
}

pub fn diagnostics<T: Real>(f: &SurfaceFrame<T>, field: &Tensor<T>) -> Result<Diagnostics<T>> {
    match field.rank() {
        1 => {
            let r = [field[0], field[1]];
            let norm = vector_norm(f, &r);
            let phi = tangent_angles(f, &r).ok();
            Ok(Diagnostics { norm, phi, trace: None, asym: None, eigenvalues: None })
        }
        2 => {
            let norm = tensor_norm(f, field);
            let asym = eps_pairing(f, field);
            let symmetric = asym.abs() <= T::c(1e-9) * (T::one() + norm);
            let (phi, eig) = if symmetric {
                let e = symmetric_eigen(f, field);
                let phi = tangent_angles(f, &e[1].1).ok();
                (phi, Some([e[0].0, e[1].0]))
            } else {
                (None, None)
            };
            Ok(Diagnostics { norm, phi, trace: Some(trace(f, field)), asym: Some(asym), eigenvalues: eig })
        }
        n => Err(MosaicError::RankMismatch { expected: 2, found: n }),
    }
}
