//! Surface frame: basis, normal, metric, Christoffel symbols, shape operator and Levi-Civita tensor.

use crate::error::{MosaicError, Result};
use crate::geometry::chart::{Chart, ChartJets};
use crate::scalar::Real;
use crate::tensor::{cross3, dot3, inv2, norm3, scale3, Mat2, Vec2, Vec3};

/// Relative tolerance for a singular metric: det g ≤ SINGULAR_TOL · scale².
pub const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceFrame<T> {
    pub position: Vec3<T>,
    pub basis: [Vec3<T>; 2],
    /// Unit normal ∂₁Z × ∂₂Z / ‖∂₁Z × ∂₂Z‖.
    pub normal: Vec3<T>,
    pub g: Mat2<T>,
    pub g_inv: Mat2<T>,
    pub det_g: T,
    /// Γ_ijk = ⟨∂_i∂_j Z, ∂_k Z⟩, indexed `[i][j][k]`.
    pub christoffel_first: [[[T; 2]; 2]; 2],
    /// Γ^k_ij, indexed `[k][i][j]`.
    pub christoffel: [[[T; 2]; 2]; 2],
    /// II_ij = ⟨∂_i∂_j Z, N⟩.
    pub shape: Mat2<T>,
    /// ε_ij = √det g · ε̂_ij with ε̂_12 = 1.
    pub eps: Mat2<T>,
}

pub fn frame_from_jets<T: Real>(j: &ChartJets<T>) -> Result<SurfaceFrame<T>> {
    let basis = [j.d[1], j.d[2]];
    let mut g = [[T::zero(); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            g[a][b] = dot3(&basis[a], &basis[b]);
        }
    }
    let det_g = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let scale = (g[0][0] + g[1][1]) * T::c(0.5);
    if !(det_g > T::c(SINGULAR_TOL) * scale * scale) {
        return Err(MosaicError::SingularMetric { det: det_g.to_f64_lossy() });
    }
    let g_inv = inv2(&g);
    let cr = cross3(&basis[0], &basis[1]);
    let normal = scale3(T::one() / norm3(&cr), &cr);
    let mut first = [[[T::zero(); 2]; 2]; 2];
    let mut shape = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for jx in 0..2 {
            let zij = &j.dd[i + 1][jx + 1];
            for k in 0..2 {
                first[i][jx][k] = dot3(zij, &basis[k]);
            }
            shape[i][jx] = dot3(zij, &normal);
        }
    }
    let mut second = [[[T::zero(); 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for jx in 0..2 {
                second[k][i][jx] = g_inv[k][0] * first[i][jx][0] + g_inv[k][1] * first[i][jx][1];
            }
        }
    }
    let s = det_g.sqrt();
    Ok(SurfaceFrame {
        position: j.z,
        basis,
        normal,
        g,
        g_inv,
        det_g,
        christoffel_first: first,
        christoffel: second,
        shape,
        eps: [[T::zero(), s], [-s, T::zero()]],
    })
}

pub fn evaluate_frame<T: Real, C: Chart<T> + ?Sized>(chart: &C, t: T, y: [T; 2]) -> Result<SurfaceFrame<T>> {
    frame_from_jets(&chart.jets(t, y)?)
}

impl<T: Real> SurfaceFrame<T> {
    pub fn lower(&self, v: &Vec2<T>) -> Vec2<T> {
        [self.g[0][0] * v[0] + self.g[0][1] * v[1], self.g[1][0] * v[0] + self.g[1][1] * v[1]]
    }

    pub fn raise(&self, w: &Vec2<T>) -> Vec2<T> {
        let gi = &self.g_inv;
        [gi[0][0] * w[0] + gi[0][1] * w[1], gi[1][0] * w[0] + gi[1][1] * w[1]]
    }

    /// Mixed form A^i_j = g^{ik} A_kj of a covariant 2-tensor.
    pub fn raise_first(&self, a: &Mat2<T>) -> Mat2<T> {
        let mut o = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] = self.g_inv[i][0] * a[0][j] + self.g_inv[i][1] * a[1][j];
            }
        }
        o
    }

    /// Contravariant form A^{ij} of a covariant 2-tensor.
    pub fn raise_both(&self, a: &Mat2<T>) -> Mat2<T> {
        let m = self.raise_first(a);
        let mut o = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] = m[i][0] * self.g_inv[0][j] + m[i][1] * self.g_inv[1][j];
            }
        }
        o
    }

    /// Covariant form A_ij of a mixed 2-tensor A^i_j.
    pub fn lower_first(&self, a: &Mat2<T>) -> Mat2<T> {
        let mut o = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] = self.g[i][0] * a[0][j] + self.g[i][1] * a[1][j];
            }
        }
        o
    }

    /// Mixed form (Aᵀ)^i_j = g^{ik} A_jk of the transpose of a covariant 2-tensor.
    pub fn raise_first_transposed(&self, a: &Mat2<T>) -> Mat2<T> {
        let mut o = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] = self.g_inv[i][0] * a[j][0] + self.g_inv[i][1] * a[j][1];
            }
        }
        o
    }

    /// ε^i_j.
    pub fn eps_mixed(&self) -> Mat2<T> {
        self.raise_first(&self.eps)
    }

    pub fn sqrt_det(&self) -> T {
        self.det_g.sqrt()
    }

    pub fn inner(&self, a: &Vec2<T>, b: &Vec2<T>) -> T {
        let la = self.lower(a);
        la[0] * b[0] + la[1] * b[1]
    }

    /// Tangent vector in ℝ³ for contravariant components.
    pub fn push(&self, v: &Vec2<T>) -> Vec3<T> {
        let mut o = [T::zero(); 3];
        for k in 0..3 {
            o[k] = v[0] * self.basis[0][k] + v[1] * self.basis[1][k];
        }
        o
    }
}
