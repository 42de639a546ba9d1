//! General-rank theorems on bundle reps.

use crate::bundle::{SpacetimeTensorRep, TangentialJet, TensorFieldJet};
use crate::derivatives::{covariant_along, dot_slot, hodge::star, transpose_mixed};
use crate::error::{MosaicError, Result};
use crate::geometry::{KinematicState, MaterialData, SurfaceFrame};
use crate::scalar::{sum_of, Real};
use crate::shuffle::{FlatWord, Shuffle};
use crate::tensor::{Mat2, Tensor};

/// ḟ = ∂_t f + ∇_u f, shared by every kind.
pub fn scalar_rate<T: Real>(jet: &TangentialJet<T>, f: &SurfaceFrame<T>, mat: &MaterialData<T>) -> Result<T> {
    jet.check()?;
    if jet.rank() != 0 {
        return Err(MosaicError::RankMismatch { expected: 0, found: jet.rank() });
    }
    let mut out = jet.dt.clone();
    out.add_assign(&covariant_along(&jet.value, &jet.dy, f, &mat.u));
    Ok(out[0])
}

fn block_jet<T: Real>(jet: &TensorFieldJet<T>, s: &Shuffle) -> (Tensor<T>, Tensor<T>, [Tensor<T>; 2]) {
    (
        jet.value.block_for(s).clone(),
        jet.dt.block_for(s).clone(),
        [jet.dy[0].block_for(s).clone(), jet.dy[1].block_for(s).clone()],
    )
}

fn total_derivative_parts<T: Real>(
    value: &Tensor<T>,
    dt: &Tensor<T>,
    dy: &[Tensor<T>; 2],
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Tensor<T> {
    let mut out = dt.clone();
    out.add_assign(&covariant_along(value, dy, f, &mat.u));
    let b = kin.b_mixed(f);
    for slot in 0..value.rank() {
        out.add_assign(&dot_slot(&b, slot, value));
    }
    out
}

/// q̇ = ∂_t q + ∇_u q + Σ_β B ·_β q.
pub fn tangential_total_derivative<T: Real>(
    jet: &TangentialJet<T>,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<Tensor<T>> {
    jet.check()?;
    if jet.rank() > crate::shuffle::MAX_RANK {
        return Err(MosaicError::RankCap(jet.rank()));
    }
    Ok(total_derivative_parts(&jet.value, &jet.dt, &jet.dy, f, kin, mat))
}

/// Σ_k w_k r_{σ^β}^{… k at p̆ …}.
fn raised_contraction<T: Real>(rep: &SpacetimeTensorRep<T>, s: &Shuffle, beta: usize, w: &[T; 2]) -> Tensor<T> {
    let (up, p) = s.raise(beta).expect("β within transversal range");
    rep.block_for(&up).contract_slot(p - 1, w)
}

/// w^{i_β} r_{σ_β}^{… î_β …}.
fn lowered_insertion<T: Real>(rep: &SpacetimeTensorRep<T>, s: &Shuffle, beta: usize, w: &[T; 2]) -> Tensor<T> {
    let (down, _) = s.lower(beta).expect("β within instantaneous range");
    rep.block_for(&down).insert_slot(beta - 1, w)
}

/// Material derivative 𝔡 of a rep, block by block.
pub fn material_derivative<T: Real>(
    jet: &TensorFieldJet<T>,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<SpacetimeTensorRep<T>> {
    jet.check()?;
    let r = &jet.value;
    let n = r.rank();
    let (nu, zeta) = (kin.nu, kin.zeta);
    let bm_up = mat.bm_vector(f);
    let b = kin.b_mixed(f);
    let mut out = SpacetimeTensorRep::zeros(n);
    for s in r.shuffles() {
        let alpha = s.alpha();
        let (value, dt, dy) = block_jet(jet, &s);
        let mut acc = dt;
        acc.add_assign(&covariant_along(&value, &dy, f, &mat.u));
        if alpha > 0 {
            acc.axpy(T::n(alpha) * zeta * nu * mat.nu_dot, &value);
            for beta in 1..=alpha {
                acc.axpy(zeta * nu, &raised_contraction(r, &s, beta, &mat.bm_form));
            }
        }
        for beta in 1..=n - alpha {
            acc.add_assign(&dot_slot(&b, beta - 1, &value));
            acc.axpy(-nu, &lowered_insertion(r, &s, beta, &bm_up));
        }
        *out.block_for_mut(&s) = acc;
    }
    Ok(out)
}

fn check_word<T: Real>(jet: &TensorFieldJet<T>, word: &FlatWord) -> Result<()> {
    jet.check()?;
    if word.n() != jet.rank() {
        return Err(MosaicError::RankMismatch { expected: jet.rank(), found: word.n() });
    }
    Ok(())
}

/// Shuffled convected derivative Ľ^{♭σ̃} of a rep.
///
/// The instantaneous part is assembled as ∂_t^{♭σ̌} r_σ + ∇_u r_σ − Σ_E ∇u ·_β r_σ + Σ_¬E ∇uᵀ ·_β r_σ,
/// where ∂_t^{♭σ̌} adds (B + Bᵀ) on the lowered slots.
pub fn convected_derivative<T: Real>(
    jet: &TensorFieldJet<T>,
    word: &FlatWord,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<SpacetimeTensorRep<T>> {
    check_word(jet, word)?;
    let r = &jet.value;
    let n = r.rank();
    let (nu, zeta) = (kin.nu, kin.zeta);
    let b = kin.b_mixed(f);
    let bt = transpose_mixed(f, &b);
    let mut sym: Mat2<T> = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            sym[i][k] = b[i][k] + bt[i][k];
        }
    }
    let gu = mat.grad_u;
    let gut = transpose_mixed(f, &gu);
    let lie_flat = mat.lie_vm_flat(f);
    let mut out = SpacetimeTensorRep::zeros(n);
    for s in r.shuffles() {
        let alpha = s.alpha();
        let (value, dt, dy) = block_jet(jet, &s);
        let mut acc = dt;
        for beta in 1..=n - alpha {
            if !word.is_sharp(s.at(alpha + beta)) {
                acc.add_assign(&dot_slot(&sym, beta - 1, &value));
            }
        }
        acc.add_assign(&covariant_along(&value, &dy, f, &mat.u));
        for beta in 1..=n - alpha {
            if word.is_sharp(s.at(alpha + beta)) {
                acc.axpy(-T::one(), &dot_slot(&gu, beta - 1, &value));
            } else {
                acc.add_assign(&dot_slot(&gut, beta - 1, &value));
            }
        }
        for beta in 1..=alpha {
            if !word.is_sharp(s.at(beta)) {
                acc.axpy(zeta, &raised_contraction(r, &s, beta, &lie_flat));
                acc.axpy(T::c(2.0) * zeta * nu * mat.nu_dot, &value);
            }
        }
        for beta in 1..=n - alpha {
            if word.is_sharp(s.at(alpha + beta)) {
                acc.axpy(-T::one(), &lowered_insertion(r, &s, beta, &mat.lie_vm));
            }
        }
        *out.block_for_mut(&s) = acc;
    }
    Ok(out)
}

/// Σ_{l≤α̃} Q ·_{σ̃(l)} R − Σ_{l>α̃} Qᵀ ·_{σ̃(l)} R in bundle form.
pub fn shuffled_linear_sum<T: Real>(
    q: &SpacetimeTensorRep<T>,
    r: &SpacetimeTensorRep<T>,
    word: &FlatWord,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
) -> Result<SpacetimeTensorRep<T>> {
    if q.rank() != 2 {
        return Err(MosaicError::RankMismatch { expected: 2, found: q.rank() });
    }
    if word.n() != r.rank() {
        return Err(MosaicError::RankMismatch { expected: r.rank(), found: word.n() });
    }
    let n = r.rank();
    let inv_zeta = T::one() / kin.zeta;
    let q_ss = q.block(0b00);
    let vec2 = |t: &Tensor<T>| [t[0], t[1]];
    let q_st = vec2(q.block(0b10));
    let q_ts = vec2(q.block(0b01));
    let q_tt = q.block(0b11)[0];
    let (q_st_flat, q_ts_flat) = (f.lower(&q_st), f.lower(&q_ts));
    // (q_SS)^i_k = q^{ia} g_ak and (q_SS)_k^i as a matrix [i][k] = g_ka q^{ai}.
    let mut q_up = [[T::zero(); 2]; 2];
    let mut q_tr = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            q_up[i][k] = sum_of((0..2).map(|a| q_ss.get(&[i, a]) * f.g[a][k]));
            q_tr[i][k] = sum_of((0..2).map(|a| f.g[k][a] * q_ss.get(&[a, i])));
        }
    }
    let mut out = SpacetimeTensorRep::zeros(n);
    for s in r.shuffles() {
        let alpha = s.alpha();
        let value = r.block_for(&s);
        let mut acc = Tensor::zeros(2, n - alpha);
        for beta in 1..=alpha {
            if word.is_sharp(s.at(beta)) {
                acc.add_assign(&raised_contraction(r, &s, beta, &q_ts_flat));
                acc.axpy(q_tt * inv_zeta, value);
            } else {
                acc.axpy(-T::one(), &raised_contraction(r, &s, beta, &q_st_flat));
                acc.axpy(-q_tt * inv_zeta, value);
            }
        }
        for beta in 1..=n - alpha {
            if word.is_sharp(s.at(alpha + beta)) {
                acc.add_assign(&dot_slot(&q_up, beta - 1, value));
                acc.axpy(inv_zeta, &lowered_insertion(r, &s, beta, &q_st));
            } else {
                acc.axpy(-T::one(), &dot_slot(&q_tr, beta - 1, value));
                acc.axpy(-inv_zeta, &lowered_insertion(r, &s, beta, &q_ts));
            }
        }
        *out.block_for_mut(&s) = acc;
    }
    Ok(out)
}

/// Ľ^{♭σ̃} = 𝔡 − Σ_{l≤α̃} ∇τ_m ·_{σ̃(l)} + Σ_{l>α̃} ∇τ_mᵀ ·_{σ̃(l)}, assembled from the linear-sum lemma.
pub fn convected_derivative_via_linear_sum<T: Real>(
    jet: &TensorFieldJet<T>,
    word: &FlatWord,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<SpacetimeTensorRep<T>> {
    check_word(jet, word)?;
    let grad = crate::geometry::grad_material_direction(f, kin, mat);
    let m = material_derivative(jet, f, kin, mat)?;
    Ok(m.sub(&shuffled_linear_sum(&grad, &jet.value, word, f, kin)?))
}

/// Jaumann derivative as ½(Ľ^{♯ⁿ} + Ľ^{♭ⁿ}).
pub fn jaumann_derivative<T: Real>(
    jet: &TensorFieldJet<T>,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<SpacetimeTensorRep<T>> {
    let n = jet.rank();
    let up = convected_derivative(jet, &FlatWord::sharp(n), f, kin, mat)?;
    let down = convected_derivative(jet, &FlatWord::flat(n), f, kin, mat)?;
    Ok(up.add(&down).scale(T::c(0.5)))
}

/// Jaumann derivative from its closed form with rot v_m and Hodge stars.
pub fn jaumann_derivative_closed_form<T: Real>(
    jet: &TensorFieldJet<T>,
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> Result<SpacetimeTensorRep<T>> {
    jet.check()?;
    let r = &jet.value;
    let n = r.rank();
    let (nu, zeta) = (kin.nu, kin.zeta);
    let half = T::c(0.5);
    let lie_flat = mat.lie_vm_flat(f);
    let mut out = SpacetimeTensorRep::zeros(n);
    for s in r.shuffles() {
        let alpha = s.alpha();
        let (value, dt, dy) = block_jet(jet, &s);
        let mut acc = total_derivative_parts(&value, &dt, &dy, f, kin, mat);
        if alpha > 0 {
            acc.axpy(T::n(alpha) * zeta * nu * mat.nu_dot, &value);
        }
        for slot in 0..n - alpha {
            acc.axpy(-half * mat.rot_vm, &star(f, &value, slot)?);
        }
        for beta in 1..=alpha {
            acc.axpy(half * zeta, &raised_contraction(r, &s, beta, &lie_flat));
        }
        for beta in 1..=n - alpha {
            acc.axpy(-half, &lowered_insertion(r, &s, beta, &mat.lie_vm));
        }
        *out.block_for_mut(&s) = acc;
    }
    Ok(out)
}
