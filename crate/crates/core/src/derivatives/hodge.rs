//! Surface Hodge star, curl and Levi-Civita pairing.

use crate::derivatives::dot_slot;
use crate::error::{MosaicError, Result};
use crate::geometry::SurfaceFrame;
use crate::scalar::{sum_of, Real};
use crate::tensor::{Mat2, Tensor};

/// *_β q = −ε ·_β q, i.e. [*q]^{..i..} = −ε^i_k q^{..k..}.
pub fn star<T: Real>(f: &SurfaceFrame<T>, q: &Tensor<T>, slot: usize) -> Result<Tensor<T>> {
    if slot >= q.rank() {
        return Err(MosaicError::SlotOutOfRange { slot, rank: q.rank() });
    }
    let e = f.eps_mixed();
    let neg: Mat2<T> = [[-e[0][0], -e[0][1]], [-e[1][0], -e[1][1]]];
    Ok(dot_slot(&neg, slot, q))
}

/// rot w = −⟨∇w, ε⟩ for a mixed gradient (∇w)^i_k.
pub fn rot<T: Real>(f: &SurfaceFrame<T>, grad: &Mat2<T>) -> T {
    let low = f.lower_first(grad);
    let e = f.raise_both(&f.eps);
    let mut s = T::zero();
    for i in 0..2 {
        for k in 0..2 {
            s += low[i][k] * e[i][k];
        }
    }
    -s
}

/// ⟨q, ε⟩ = q^{ij} ε_ij.
pub fn eps_pairing<T: Real>(f: &SurfaceFrame<T>, q: &Tensor<T>) -> T {
    let mut s = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            s += q.get(&[i, j]) * f.eps[i][j];
        }
    }
    s
}

/// tr(q)·g⁻¹ − qᵀ, the contravariant value of (*₁∘*₂)q.
pub fn star_twice_identity<T: Real>(f: &SurfaceFrame<T>, q: &Tensor<T>) -> Tensor<T> {
    let tr: T = sum_of((0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| f.g[i][j] * q.get(&[i, j])));
    Tensor::from_fn(2, 2, |ix| tr * f.g_inv[ix[0]][ix[1]] - q.get(&[ix[1], ix[0]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{evaluate_frame, SpheroidalChart};

    #[test]
    fn star_identities() {
        let c = SpheroidalChart::<f64>::helical_spheroid();
        let f = evaluate_frame(&c, 0.7, [0.8, 0.1]).unwrap();
        let r = Tensor::vector(&[0.3, -1.2]);
        let rr = star(&f, &star(&f, &r, 0).unwrap(), 0).unwrap();
        assert!(rr.add(&r).max_abs() < 1e-12);
        let q = Tensor::from_vec(2, 2, vec![0.4, -0.3, 1.1, 0.9]);
        let lhs = star(&f, &star(&f, &q, 1).unwrap(), 0).unwrap();
        assert!(lhs.max_abs_diff(&star_twice_identity(&f, &q)) < 1e-12);
        let sym = Tensor::from_vec(2, 2, vec![0.4, -0.3, -0.3, 0.9]);
        assert!(eps_pairing(&f, &sym).abs() < 1e-15);
        assert_eq!(star(&f, &r, 1), Err(MosaicError::SlotOutOfRange { slot: 1, rank: 1 }));
    }
}
