//! Independent (2+1)-dimensional embedding oracle.
//!
//! Fields are reconstructed to coordinate proxies, differentiated numerically along
//! (t, y¹, y²) and combined with the Gram Christoffel symbols of X = (Z(t, y), t).

use std::cell::RefCell;

use crate::bundle::{decompose, reconstruct, CoordJet, SpacetimeCoordTensor, SpacetimeTensorRep};
use crate::error::{MosaicError, Result};
use crate::geometry::{
    frame_from_jets, gram_eta, kinematics_from_jets, observer_kinematics, spacetime_christoffels, Chart,
    MaterialMotion, SpacetimeMetric,
};
use crate::scalar::{sum_of, Real};
use crate::shuffle::FlatWord;
use crate::tensor::{det3, flat3, inv3, Mat3, Tensor};

/// Fallible closure sampled inside a finite-difference stencil.
///
/// The first error is kept and reported after the stencil; failed samples are NaN.
struct Sampler<T> {
    err: RefCell<Option<MosaicError>>,
    _m: std::marker::PhantomData<T>,
}

impl<T: Real> Sampler<T> {
    fn new() -> Self {
        Self { err: RefCell::new(None), _m: std::marker::PhantomData }
    }

    fn take(&self, r: Result<Tensor<T>>, dim: usize, rank: usize) -> Tensor<T> {
        match r {
            Ok(x) => x,
            Err(e) => {
                self.err.borrow_mut().get_or_insert(e);
                Tensor::from_fn(dim, rank, |_| T::nan())
            }
        }
    }

    fn finish(self) -> Result<()> {
        match self.err.into_inner() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

fn coord_jet<T: Real>(f: &dyn Fn(T, [T; 2]) -> Result<Tensor<T>>, t: T, y: [T; 2]) -> Result<CoordJet<T>> {
    let center = f(t, y)?;
    let rank = center.rank();
    let s = Sampler::new();
    let jet = CoordJet::from_fn(&|t, y| s.take(f(t, y), 3, rank), t, y);
    s.finish()?;
    Ok(jet)
}

/// Coordinate material direction τ_m = (1, u¹, u²).
pub fn material_direction<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    t: T,
    y: [T; 2],
) -> Result<[T; 3]> {
    let kin = observer_kinematics(chart, t, y)?;
    let vm = motion.jet(&kin, t, y).value;
    Ok([T::one(), vm[0] - kin.v[0], vm[1] - kin.v[1]])
}

fn material_direction_jet<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    t: T,
    y: [T; 2],
) -> Result<([T; 3], Mat3<T>)> {
    let f = |t: T, y: [T; 2]| material_direction(chart, motion, t, y).map(|d| Tensor::vector(&d));
    let j = coord_jet(&f, t, y)?;
    let mut d = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            d[i][k] = j.partials[k][i];
        }
    }
    Ok(([j.value[0], j.value[1], j.value[2]], d))
}

/// Coordinate proxy R = ⟦r⟧⁻¹ of a rep field at (t, y).
pub fn coordinate_proxy<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    field: &dyn Fn(T, [T; 2]) -> SpacetimeTensorRep<T>,
    t: T,
    y: [T; 2],
) -> Result<SpacetimeCoordTensor<T>> {
    let kin = observer_kinematics(chart, t, y)?;
    reconstruct(&field(t, y), &kin)
}

/// η_{IJ} from the Gram construction at (t, y).
pub fn gram_metric<T: Real, C: Chart<T> + ?Sized>(chart: &C, t: T, y: [T; 2]) -> Result<Mat3<T>> {
    let j = chart.jets(t, y)?;
    frame_from_jets(&j)?;
    Ok(gram_eta(&j))
}

/// Lowers (word ♭) or keeps (word ♯) every slot of a contravariant proxy.
pub fn lower_slots<T: Real>(r: &Tensor<T>, word: &FlatWord, eta: &Mat3<T>) -> Tensor<T> {
    let m = flat3(eta);
    let mut x = r.clone();
    for p in 1..=r.rank() {
        if !word.is_sharp(p) {
            x = x.apply_slot(p - 1, &m);
        }
    }
    x
}

/// Inverse of [`lower_slots`].
pub fn raise_slots<T: Real>(r: &Tensor<T>, word: &FlatWord, eta: &Mat3<T>) -> Tensor<T> {
    lower_slots(r, word, &inv3(eta))
}

/// Covariant derivative along τ_m of a coordinate tensor whose covariant slots are marked ♭ in `word`.
pub fn coordinate_material_derivative<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    field: &dyn Fn(T, [T; 2]) -> Result<Tensor<T>>,
    word: &FlatWord,
    t: T,
    y: [T; 2],
) -> Result<Tensor<T>> {
    let jet = coord_jet(field, t, y)?;
    if word.n() != jet.rank() {
        return Err(MosaicError::RankMismatch { expected: jet.rank(), found: word.n() });
    }
    let SpacetimeMetric { gamma, .. } = spacetime_christoffels(chart, t, y)?;
    let tau = material_direction(chart, motion, t, y)?;
    let mut out = Tensor::zeros(3, jet.rank());
    for k in 0..3 {
        let mut d = jet.partials[k].clone();
        let mut up = [T::zero(); 9];
        let mut down = [T::zero(); 9];
        for i in 0..3 {
            for j in 0..3 {
                up[i * 3 + j] = gamma[i][k][j];
                down[i * 3 + j] = -gamma[j][k][i];
            }
        }
        for p in 1..=jet.rank() {
            let m = if word.is_sharp(p) { &up } else { &down };
            d.add_assign(&jet.value.apply_slot(p - 1, m));
        }
        out.axpy(tau[k], &d);
    }
    Ok(out)
}

/// Lie derivative along τ_m of a coordinate tensor whose covariant slots are marked ♭ in `word`.
pub fn coordinate_lie_derivative<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    field: &dyn Fn(T, [T; 2]) -> Result<Tensor<T>>,
    word: &FlatWord,
    t: T,
    y: [T; 2],
) -> Result<Tensor<T>> {
    let jet = coord_jet(field, t, y)?;
    if word.n() != jet.rank() {
        return Err(MosaicError::RankMismatch { expected: jet.rank(), found: word.n() });
    }
    let (tau, dtau) = material_direction_jet(chart, motion, t, y)?;
    let mut out = Tensor::zeros(3, jet.rank());
    for k in 0..3 {
        out.axpy(tau[k], &jet.partials[k]);
    }
    let mut up = [T::zero(); 9];
    let mut down = [T::zero(); 9];
    for i in 0..3 {
        for j in 0..3 {
            up[i * 3 + j] = -dtau[i][j];
            down[i * 3 + j] = dtau[j][i];
        }
    }
    for p in 1..=jet.rank() {
        let m = if word.is_sharp(p) { &up } else { &down };
        out.add_assign(&jet.value.apply_slot(p - 1, m));
    }
    Ok(out)
}

/// 𝔇R = τ_m^K ∇_K R for the proxy of a rep field, decomposed back into a rep.
pub fn oracle_material_derivative<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    field: &dyn Fn(T, [T; 2]) -> SpacetimeTensorRep<T>,
    t: T,
    y: [T; 2],
) -> Result<SpacetimeTensorRep<T>> {
    let n = field(t, y).rank();
    let proxy = |t: T, y: [T; 2]| coordinate_proxy(chart, field, t, y);
    let d = coordinate_material_derivative(chart, motion, &proxy, &FlatWord::sharp(n), t, y)?;
    decompose_at(chart, &d, t, y)
}

/// Ľ^{♭σ̃}: lower the ♭ slots with η, take the Lie derivative along τ_m, raise back.
pub fn oracle_lie_derivative<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    field: &dyn Fn(T, [T; 2]) -> SpacetimeTensorRep<T>,
    word: &FlatWord,
    t: T,
    y: [T; 2],
) -> Result<SpacetimeTensorRep<T>> {
    let lowered = |t: T, y: [T; 2]| {
        let r = coordinate_proxy(chart, field, t, y)?;
        Ok(lower_slots(&r, word, &gram_metric(chart, t, y)?))
    };
    let d = coordinate_lie_derivative(chart, motion, &lowered, word, t, y)?;
    let raised = raise_slots(&d, word, &gram_metric(chart, t, y)?);
    decompose_at(chart, &raised, t, y)
}

fn decompose_at<T: Real, C: Chart<T> + ?Sized>(chart: &C, r: &Tensor<T>, t: T, y: [T; 2]) -> Result<SpacetimeTensorRep<T>> {
    let j = chart.jets(t, y)?;
    let f = frame_from_jets(&j)?;
    let kin = kinematics_from_jets(&j, &f);
    decompose(r, &f, &kin)
}

/// Covariant spacetime Levi-Civita tensor ε_{IJK} = sign·√det η·ε̂_{IJK}.
pub fn spacetime_levi_civita<T: Real>(eta: &Mat3<T>, sign: T) -> Tensor<T> {
    let s = sign * det3(eta).sqrt();
    Tensor::from_fn(3, 3, |ix| {
        let (a, b, c) = (ix[0], ix[1], ix[2]);
        if a == b || b == c || a == c {
            T::zero()
        } else {
            let even = (a, b, c) == (0, 1, 2) || (a, b, c) == (1, 2, 0) || (a, b, c) == (2, 0, 1);
            if even {
                s
            } else {
                -s
            }
        }
    })
}

/// ⊛ lowered on its first two slots: (⊛Q)_{AB}^K = −ε_{ABL} Q^{LK}.
pub fn hodge_lowered<T: Real>(q: &Tensor<T>, eps: &Tensor<T>) -> Tensor<T> {
    Tensor::from_fn(3, 3, |ix| {
        let (a, b, k) = (ix[0], ix[1], ix[2]);
        -sum_of((0..3).map(|l| eps.get(&[a, b, l]) * q.get(&[l, k])))
    })
}

/// ⊛⁻¹ of a tensor lowered on its first two slots: (⊛⁻¹X)^{IJ} = −½ η^{IA} ε_{AKL} X^{KLJ}.
pub fn hodge_inverse_lowered<T: Real>(x_low: &Tensor<T>, eps: &Tensor<T>, eta: &Mat3<T>) -> Tensor<T> {
    let ei = inv3(eta);
    let x = raise_slots(x_low, &"♭♭♯".parse().expect("valid word"), eta);
    let half = T::c(0.5);
    Tensor::from_fn(3, 2, |ix| {
        let (i, j) = (ix[0], ix[1]);
        let mut s = T::zero();
        for a in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    s += ei[i][a] * eps.get(&[a, k, l]) * x.get(&[k, l, j]);
                }
            }
        }
        -half * s
    })
}

/// ⟦⊛⁻¹ Ľ^{♭♭♯} ⊛ ⟦q⟧⁻¹⟧ restricted to its instantaneous block.
pub fn oracle_truesdell<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    q_field: &dyn Fn(T, [T; 2]) -> Tensor<T>,
    sign: T,
    t: T,
    y: [T; 2],
) -> Result<Tensor<T>> {
    let field = |t: T, y: [T; 2]| SpacetimeTensorRep::instantaneous(q_field(t, y));
    let star = |t: T, y: [T; 2]| {
        let q = coordinate_proxy(chart, &field, t, y)?;
        let eta = gram_metric(chart, t, y)?;
        Ok(hodge_lowered(&q, &spacetime_levi_civita(&eta, sign)))
    };
    let word: FlatWord = "♭♭♯".parse()?;
    let lie = coordinate_lie_derivative(chart, motion, &star, &word, t, y)?;
    let eta = gram_metric(chart, t, y)?;
    let back = hodge_inverse_lowered(&lie, &spacetime_levi_civita(&eta, sign), &eta);
    Ok(decompose_at(chart, &back, t, y)?.block(0).clone())
}

/// max |𝔇η^{IJ}| and max |𝔇η_{IJ}| along τ_m.
pub fn metricity_residual<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    t: T,
    y: [T; 2],
) -> Result<T> {
    let low = |t: T, y: [T; 2]| gram_metric(chart, t, y).map(|e| Tensor::matrix3(&e));
    let up = |t: T, y: [T; 2]| gram_metric(chart, t, y).map(|e| Tensor::matrix3(&inv3(&e)));
    let a = coordinate_material_derivative(chart, motion, &low, &FlatWord::flat(2), t, y)?;
    let b = coordinate_material_derivative(chart, motion, &up, &FlatWord::sharp(2), t, y)?;
    Ok(a.max_abs().max(b.max_abs()))
}

/// Lowering discrepancies of a rep field: (|𝔇(R♭) − (𝔇R)♭|, |Ľ(R♭) − (ĽR)♭|), all slots lowered.
pub fn lowering_discrepancies<T: Real, C: Chart<T> + ?Sized>(
    chart: &C,
    motion: &MaterialMotion<T>,
    field: &dyn Fn(T, [T; 2]) -> SpacetimeTensorRep<T>,
    t: T,
    y: [T; 2],
) -> Result<(T, T)> {
    let n = field(t, y).rank();
    let (sharp, flat) = (FlatWord::sharp(n), FlatWord::flat(n));
    let eta = gram_metric(chart, t, y)?;
    let proxy = |t: T, y: [T; 2]| coordinate_proxy(chart, field, t, y);
    let lowered = |t: T, y: [T; 2]| Ok(lower_slots(&coordinate_proxy(chart, field, t, y)?, &flat, &gram_metric(chart, t, y)?));
    let m_up = coordinate_material_derivative(chart, motion, &proxy, &sharp, t, y)?;
    let m_low = coordinate_material_derivative(chart, motion, &lowered, &flat, t, y)?;
    let l_up = coordinate_lie_derivative(chart, motion, &proxy, &sharp, t, y)?;
    let l_low = coordinate_lie_derivative(chart, motion, &lowered, &flat, t, y)?;
    let dm = lower_slots(&m_up, &flat, &eta).max_abs_diff(&m_low);
    let dl = lower_slots(&l_up, &flat, &eta).max_abs_diff(&l_low);
    Ok((dm, dl))
}
