//! Observer-invariant time derivatives: material, shuffled convected, Jaumann and Truesdell.

mod general;
mod hodge;
mod instantaneous;

pub use general::{
    convected_derivative, convected_derivative_via_linear_sum, jaumann_derivative, jaumann_derivative_closed_form,
    material_derivative, scalar_rate, shuffled_linear_sum, tangential_total_derivative,
};
pub use hodge::{eps_pairing, rot, star, star_twice_identity};
pub use instantaneous::{
    instantaneous_two_tensor_rate, instantaneous_vector_rate, material_acceleration, truesdell_factor,
    truesdell_rate,
};

use std::fmt;
use std::str::FromStr;

use crate::bundle::{SpacetimeTensorRep, TangentialJet, TensorFieldJet};
use crate::error::{MosaicError, Result};
use crate::geometry::LocalState;
use crate::scalar::Real;
use crate::shuffle::FlatWord;
use crate::tensor::{flat2, Mat2, Tensor};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DerivativeKind {
    Material,
    Convected(FlatWord),
    Jaumann,
    /// Only defined for 2-tensors.
    Truesdell,
}

impl DerivativeKind {
    pub fn upper(n: usize) -> Self {
        Self::Convected(FlatWord::sharp(n))
    }

    pub fn lower(n: usize) -> Self {
        Self::Convected(FlatWord::flat(n))
    }

    /// CLI name of the kind for a field of rank `n`.
    pub fn name(&self) -> String {
        match self {
            Self::Material => "material".into(),
            Self::Jaumann => "jaumann".into(),
            Self::Truesdell => "truesdell".into(),
            Self::Convected(w) => {
                let parts: Vec<&str> =
                    (1..=w.n()).map(|p| if w.is_sharp(p) { "upper" } else { "lower" }).collect();
                if w.n() == 1 {
                    format!("{}-convected", parts[0])
                } else {
                    parts.join("-")
                }
            }
        }
    }
}

impl fmt::Display for DerivativeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for DerivativeKind {
    type Err = MosaicError;

    /// Parses `material`, `jaumann`, `truesdell`, `upper-convected`, `lower-convected`,
    /// dash-joined slot lists such as `upper-lower`, or a flat word such as `♯♭`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "material" => return Ok(Self::Material),
            "jaumann" => return Ok(Self::Jaumann),
            "truesdell" => return Ok(Self::Truesdell),
            "upper-convected" => return Ok(Self::upper(1)),
            "lower-convected" => return Ok(Self::lower(1)),
            _ => {}
        }
        if s.split('-').all(|p| p == "upper" || p == "lower") {
            let word: String = s.split('-').map(|p| if p == "upper" { '♯' } else { '♭' }).collect();
            return Ok(Self::Convected(word.parse()?));
        }
        s.parse::<FlatWord>()
            .map(Self::Convected)
            .map_err(|_| MosaicError::UnknownKind(s.to_string()))
    }
}

/// Which formula path produced a rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatePath {
    GeneralTheorem,
    InstantaneousFastPath,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RateValue<T> {
    Rep(SpacetimeTensorRep<T>),
    Tangential(Tensor<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateResult<T> {
    pub value: RateValue<T>,
    pub path: RatePath,
}

impl<T: Real> RateResult<T> {
    pub fn is_finite(&self) -> bool {
        match &self.value {
            RateValue::Rep(r) => r.blocks().iter().all(Tensor::is_finite),
            RateValue::Tangential(q) => q.is_finite(),
        }
    }
}

/// General-rank rate of a rep jet.
pub fn rep_rate<T: Real>(kind: &DerivativeKind, jet: &TensorFieldJet<T>, s: &LocalState<T>) -> Result<RateResult<T>> {
    let value = match kind {
        DerivativeKind::Material => material_derivative(jet, &s.frame, &s.kin, &s.mat)?,
        DerivativeKind::Convected(w) => convected_derivative(jet, w, &s.frame, &s.kin, &s.mat)?,
        DerivativeKind::Jaumann => jaumann_derivative(jet, &s.frame, &s.kin, &s.mat)?,
        DerivativeKind::Truesdell => return Err(MosaicError::UnknownKind("truesdell on bundle reps".into())),
    };
    Ok(RateResult { value: RateValue::Rep(value), path: RatePath::GeneralTheorem })
}

/// Rate of an instantaneous tangential field through the fast paths (rank 0, 1, 2).
pub fn tangential_rate<T: Real>(kind: &DerivativeKind, jet: &TangentialJet<T>, s: &LocalState<T>) -> Result<RateResult<T>> {
    let value = match jet.rank() {
        0 => Tensor::scalar(scalar_rate(jet, &s.frame, &s.mat)?),
        1 => instantaneous_vector_rate(kind, jet, &s.frame, &s.kin, &s.mat)?,
        2 => instantaneous_two_tensor_rate(kind, jet, &s.frame, &s.kin, &s.mat)?,
        n => return Err(MosaicError::UnknownKind(format!("no fast path for rank {n}"))),
    };
    Ok(RateResult { value: RateValue::Tangential(value), path: RatePath::InstantaneousFastPath })
}

/// M ·_slot q for a mixed 2×2 matrix M^i_k.
pub(crate) fn dot_slot<T: Real>(m: &Mat2<T>, slot: usize, q: &Tensor<T>) -> Tensor<T> {
    q.apply_slot(slot, &flat2(m))
}

/// ∇_u q = u^k (∂_k q + Σ_β Γ^{i_β}_{kj} q^{..j..}).
pub(crate) fn covariant_along<T: Real>(
    value: &Tensor<T>,
    dy: &[Tensor<T>; 2],
    f: &crate::geometry::SurfaceFrame<T>,
    u: &[T; 2],
) -> Tensor<T> {
    let mut out = Tensor::zeros(2, value.rank());
    for k in 0..2 {
        let mut d = dy[k].clone();
        let gk = [[f.christoffel[0][k][0], f.christoffel[0][k][1]], [f.christoffel[1][k][0], f.christoffel[1][k][1]]];
        for slot in 0..value.rank() {
            d.add_assign(&dot_slot(&gk, slot, value));
        }
        out.axpy(u[k], &d);
    }
    out
}

pub(crate) fn transpose_mixed<T: Real>(f: &crate::geometry::SurfaceFrame<T>, m: &Mat2<T>) -> Mat2<T> {
    f.raise_first_transposed(&f.lower_first(m))
}
