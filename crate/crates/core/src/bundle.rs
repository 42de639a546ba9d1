//! Coordinate proxies of spacetime tensors and their observer-invariant bundle form.

use crate::error::{MosaicError, Result};
use crate::fd;
use crate::geometry::chart::Chart;
use crate::geometry::frame::{frame_from_jets, SurfaceFrame};
use crate::geometry::kinematics::KinematicState;
use crate::geometry::spacetime::eta_blocks;
use crate::scalar::{sum_of, Real};
use crate::shuffle::{canonical_shuffles, Shuffle, MAX_RANK};
use crate::tensor::{dot3, flat3, Mat3, Tensor};

/// 3ⁿ coordinate proxies R^{I₁…Iₙ}, index 0 = t.
pub type SpacetimeCoordTensor<T> = Tensor<T>;

/// One tangential proxy r_σ per shuffle σ, stored in canonical shuffle order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeTensorRep<T> {
    n: usize,
    masks: Vec<u32>,
    slot_of_mask: Vec<usize>,
    blocks: Vec<Tensor<T>>,
}

impl<T: Real> SpacetimeTensorRep<T> {
    pub fn zeros(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank cap");
        let shuffles = canonical_shuffles(n).expect("rank within cap");
        let masks: Vec<u32> = shuffles.iter().map(Shuffle::mask).collect();
        let mut slot_of_mask = vec![0; 1 << n];
        for (k, &m) in masks.iter().enumerate() {
            slot_of_mask[m as usize] = k;
        }
        let blocks = shuffles.iter().map(|s| Tensor::zeros(2, n - s.alpha())).collect();
        Self { n, masks, slot_of_mask, blocks }
    }

    pub fn try_zeros(n: usize) -> Result<Self> {
        if n > MAX_RANK {
            return Err(MosaicError::RankCap(n));
        }
        Ok(Self::zeros(n))
    }

    /// Rep of a purely instantaneous field (only the 𝒮ⁿ block).
    pub fn instantaneous(q: Tensor<T>) -> Self {
        let mut r = Self::zeros(q.rank());
        *r.block_mut(0) = q;
        r
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Block for the shuffle whose transversal set has bitmask `mask`.
    pub fn block(&self, mask: u32) -> &Tensor<T> {
        &self.blocks[self.slot_of_mask[mask as usize]]
    }

    pub fn block_mut(&mut self, mask: u32) -> &mut Tensor<T> {
        let k = self.slot_of_mask[mask as usize];
        &mut self.blocks[k]
    }

    pub fn block_for(&self, s: &Shuffle) -> &Tensor<T> {
        self.block(s.mask())
    }

    pub fn block_for_mut(&mut self, s: &Shuffle) -> &mut Tensor<T> {
        self.block_mut(s.mask())
    }

    /// Blocks in canonical order.
    pub fn blocks(&self) -> &[Tensor<T>] {
        &self.blocks
    }

    pub fn shuffles(&self) -> Vec<Shuffle> {
        self.masks.iter().map(|&m| Shuffle::from_mask(self.n, m).expect("valid mask")).collect()
    }

    pub fn scalar_count(&self) -> usize {
        self.blocks.iter().map(Tensor::len).sum()
    }

    pub fn to_flat(&self) -> Vec<T> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn from_flat(n: usize, data: &[T]) -> Self {
        let mut r = Self::zeros(n);
        let mut off = 0;
        for b in &mut r.blocks {
            let len = b.len();
            b.data_mut().copy_from_slice(&data[off..off + len]);
            off += len;
        }
        assert_eq!(off, data.len(), "flat rep length");
        r
    }

    pub fn map(&self, mut f: impl FnMut(&Shuffle, &Tensor<T>) -> Tensor<T>) -> Self {
        let mut out = self.clone();
        for (k, s) in self.shuffles().iter().enumerate() {
            out.blocks[k] = f(s, &self.blocks[k]);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = self.clone();
        for b in &mut out.blocks {
            *b = b.scale(s);
        }
        out
    }

    fn zip(&self, o: &Self, f: impl Fn(&Tensor<T>, &Tensor<T>) -> Tensor<T>) -> Self {
        assert_eq!(self.n, o.n, "rep rank mismatch");
        let mut out = self.clone();
        for (k, b) in out.blocks.iter_mut().enumerate() {
            *b = f(&self.blocks[k], &o.blocks[k]);
        }
        out
    }

    pub fn max_abs(&self) -> T {
        self.blocks.iter().fold(T::zero(), |m, b| m.max(b.max_abs()))
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        self.sub(o).max_abs()
    }
}

/// Transversal and instantaneous projectors as mixed 3×3 tensors (rows upper, columns lower).
pub fn transversal_instantaneous_projectors<T: Real>(kin: &KinematicState<T>) -> (Mat3<T>, Mat3<T>) {
    let (z, o) = (T::zero(), T::one());
    let v = kin.v;
    let p_tau = [[o, z, z], [-v[0], z, z], [-v[1], z, z]];
    let p_s = [[z, z, z], [v[0], o, z], [v[1], z, o]];
    (p_tau, p_s)
}

/// Transversal direction τ = [1, −v].
pub fn transversal_direction<T: Real>(kin: &KinematicState<T>) -> [T; 3] {
    [T::one(), -kin.v[0], -kin.v[1]]
}

const CUT: [f64; 6] = [0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
const EMBED: [f64; 6] = [0.0, 0.0, 1.0, 0.0, 0.0, 1.0];

fn cut<T: Real>() -> [T; 6] {
    CUT.map(T::c)
}

fn embed<T: Real>() -> [T; 6] {
    EMBED.map(T::c)
}

/// ⟦R⟧: r_σ = ι(φ_σ(P^σ R)).
pub fn decompose<T: Real>(r: &SpacetimeCoordTensor<T>, f: &SurfaceFrame<T>, kin: &KinematicState<T>) -> Result<SpacetimeTensorRep<T>> {
    let n = r.rank();
    let mut rep = SpacetimeTensorRep::try_zeros(n)?;
    let (p_tau, p_s) = transversal_instantaneous_projectors(kin);
    let (pt, ps) = (flat3(&p_tau), flat3(&p_s));
    let (eta, _) = eta_blocks(f, kin);
    let tau = transversal_direction(kin);
    // ζ τ_I.
    let mut tau_low = [T::zero(); 3];
    for i in 0..3 {
        tau_low[i] = kin.zeta * dot3(&eta[i], &tau);
    }
    let cutm = cut::<T>();
    for s in rep.shuffles() {
        let mut x = r.clone();
        for p in 1..=n {
            x = x.apply_slot(p - 1, if s.is_transversal(p) { &pt } else { &ps });
        }
        for &p in s.transversal().iter().rev() {
            x = x.contract_slot(p - 1, &tau_low);
        }
        x = x.map_all_slots(&cutm, 2);
        *rep.block_for_mut(&s) = x;
    }
    Ok(rep)
}

/// ⟦·⟧⁻¹: R = Σ_σ τ^{⊗ transversal slots} ⊗ ι⁻¹(r_σ).
pub fn reconstruct<T: Real>(rep: &SpacetimeTensorRep<T>, kin: &KinematicState<T>) -> Result<SpacetimeCoordTensor<T>> {
    let n = rep.rank();
    if n > MAX_RANK {
        return Err(MosaicError::RankCap(n));
    }
    let tau = transversal_direction(kin);
    let em = embed::<T>();
    let mut out = Tensor::zeros(3, n);
    for s in rep.shuffles() {
        let b = rep.block_for(&s);
        let mut x = b.map_all_slots(&em, 3);
        for &p in s.transversal() {
            x = x.insert_slot(p - 1, &tau);
        }
        out.add_assign(&x);
    }
    Ok(out)
}

/// η-inner product over all slots.
pub fn eta_inner<T: Real>(a: &SpacetimeCoordTensor<T>, b: &SpacetimeCoordTensor<T>, eta: &Mat3<T>) -> T {
    let m = flat3(eta);
    let low = b.map_all_slots(&m, 3);
    sum_of(a.data().iter().zip(low.data()).map(|(&x, &y)| x * y))
}

/// Transforms a rep from chart A at (t, y_a) to chart B at (t, map(t, y_a)).
pub fn change_observer<T: Real, A: Chart<T> + ?Sized, B: Chart<T> + ?Sized>(
    rep: &SpacetimeTensorRep<T>,
    chart_a: &A,
    chart_b: &B,
    map: &dyn Fn(T, [T; 2]) -> [T; 2],
    t: T,
    y_a: [T; 2],
    tol: T,
) -> Result<SpacetimeTensorRep<T>> {
    let ja = chart_a.jets(t, y_a)?;
    let jb = chart_b.jets(t, map(t, y_a))?;
    let fb = frame_from_jets(&jb)?;
    let dist = sum_of((0..3).map(|k| (ja.z[k] - jb.z[k]).powi(2))).sqrt();
    if dist > tol {
        return Err(MosaicError::EventMismatch { distance: dist.to_f64_lossy() });
    }
    // J^a_i = g_B^{ab} ⟨∂_b Z_B, ∂_i Z_A⟩.
    let mut jac = [T::zero(); 4];
    for a in 0..2 {
        for i in 0..2 {
            jac[a * 2 + i] = sum_of((0..2).map(|b| fb.g_inv[a][b] * dot3(&fb.basis[b], &ja.d[i + 1])));
        }
    }
    Ok(rep.map(|_, b| b.map_all_slots(&jac, 2)))
}

/// Rep value with its partials ∂_t r_σ and ∂_k r_σ.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorFieldJet<T> {
    pub value: SpacetimeTensorRep<T>,
    pub dt: SpacetimeTensorRep<T>,
    pub dy: [SpacetimeTensorRep<T>; 2],
}

impl<T: Real> TensorFieldJet<T> {
    /// Jet of a rep-valued field by Richardson-extrapolated central differences.
    pub fn from_fn(f: &dyn Fn(T, [T; 2]) -> SpacetimeTensorRep<T>, t: T, y: [T; 2]) -> Self {
        let value = f(t, y);
        let n = value.rank();
        let g = |t: T, y: [T; 2]| f(t, y).to_flat();
        let p = fd::partials_richardson(&g, t, y, T::c(fd::FIELD_STEP));
        Self {
            value,
            dt: SpacetimeTensorRep::from_flat(n, &p[0]),
            dy: [SpacetimeTensorRep::from_flat(n, &p[1]), SpacetimeTensorRep::from_flat(n, &p[2])],
        }
    }

    pub fn constant(value: SpacetimeTensorRep<T>) -> Self {
        let z = SpacetimeTensorRep::zeros(value.rank());
        Self { value, dt: z.clone(), dy: [z.clone(), z] }
    }

    pub fn rank(&self) -> usize {
        self.value.rank()
    }

    pub fn check(&self) -> Result<()> {
        let n = self.value.rank();
        if self.dt.rank() != n || self.dy[0].rank() != n || self.dy[1].rank() != n {
            return Err(MosaicError::MissingJet("rep partials"));
        }
        Ok(())
    }
}

/// Tangential tensor value with its partials.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentialJet<T> {
    pub value: Tensor<T>,
    pub dt: Tensor<T>,
    pub dy: [Tensor<T>; 2],
}

impl<T: Real> TangentialJet<T> {
    pub fn from_fn(f: &dyn Fn(T, [T; 2]) -> Tensor<T>, t: T, y: [T; 2]) -> Self {
        let value = f(t, y);
        let (d, n) = (value.dim(), value.rank());
        let g = |t: T, y: [T; 2]| f(t, y).into_data();
        let p = fd::partials_richardson(&g, t, y, T::c(fd::FIELD_STEP));
        let mk = |v: &Vec<T>| Tensor::from_vec(d, n, v.clone());
        Self { value, dt: mk(&p[0]), dy: [mk(&p[1]), mk(&p[2])] }
    }

    pub fn constant(value: Tensor<T>) -> Self {
        let z = Tensor::zeros(value.dim(), value.rank());
        Self { value, dt: z.clone(), dy: [z.clone(), z] }
    }

    pub fn rank(&self) -> usize {
        self.value.rank()
    }

    pub fn check(&self) -> Result<()> {
        let r = self.value.rank();
        if self.dt.rank() != r || self.dy[0].rank() != r || self.dy[1].rank() != r {
            return Err(MosaicError::MissingJet("tangential partials"));
        }
        Ok(())
    }

    /// Embeds the jet as an instantaneous rep jet.
    pub fn to_rep_jet(&self) -> TensorFieldJet<T> {
        TensorFieldJet {
            value: SpacetimeTensorRep::instantaneous(self.value.clone()),
            dt: SpacetimeTensorRep::instantaneous(self.dt.clone()),
            dy: [
                SpacetimeTensorRep::instantaneous(self.dy[0].clone()),
                SpacetimeTensorRep::instantaneous(self.dy[1].clone()),
            ],
        }
    }
}

/// Coordinate proxies with partials along (t, y¹, y²).
#[derive(Debug, Clone, PartialEq)]
pub struct CoordJet<T> {
    pub value: SpacetimeCoordTensor<T>,
    pub partials: [SpacetimeCoordTensor<T>; 3],
}

impl<T: Real> CoordJet<T> {
    pub fn from_fn(f: &dyn Fn(T, [T; 2]) -> SpacetimeCoordTensor<T>, t: T, y: [T; 2]) -> Self {
        let value = f(t, y);
        let n = value.rank();
        let g = |t: T, y: [T; 2]| f(t, y).into_data();
        let p = fd::partials_richardson(&g, t, y, T::c(fd::FIELD_STEP));
        let mk = |v: &Vec<T>| Tensor::from_vec(3, n, v.clone());
        Self { value, partials: [mk(&p[0]), mk(&p[1]), mk(&p[2])] }
    }

    pub fn rank(&self) -> usize {
        self.value.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{LocalState, MaterialMotion, SpheroidalChart};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn state() -> LocalState<f64> {
        let c = SpheroidalChart::new(0.6, 1.9);
        LocalState::evaluate(&c, &MaterialMotion::Lagrangian, 0.35, [1.1, 0.4]).unwrap()
    }

    fn random_rep(n: usize, rng: &mut ChaCha8Rng) -> SpacetimeTensorRep<f64> {
        let len = SpacetimeTensorRep::<f64>::zeros(n).scalar_count();
        let data: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        SpacetimeTensorRep::from_flat(n, &data)
    }

    #[test]
    fn vector_decomposition_matches_block_formulas() {
        let s = state();
        let r = Tensor::vector(&[0.7, -0.2, 1.3]);
        let rep = decompose(&r, &s.frame, &s.kin).unwrap();
        let v = s.kin.v;
        assert!((rep.block(0b1)[0] - 0.7).abs() < 1e-14);
        assert!((rep.block(0)[0] - (-0.2 + 0.7 * v[0])).abs() < 1e-14);
        assert!((rep.block(0)[1] - (1.3 + 0.7 * v[1])).abs() < 1e-14);
        let tau = Tensor::vector(&transversal_direction(&s.kin));
        let rt = decompose(&tau, &s.frame, &s.kin).unwrap();
        assert!((rt.block(1)[0] - 1.0).abs() < 1e-14 && rt.block(0).max_abs() < 1e-14);
    }

    #[test]
    fn two_tensor_ss_block() {
        let s = state();
        let r = Tensor::from_fn(3, 2, |i| (i[0] as f64 + 1.0) * 0.3 - i[1] as f64 * 0.7 + 0.1);
        let rep = decompose(&r, &s.frame, &s.kin).unwrap();
        let v = s.kin.v;
        for i in 0..2 {
            for j in 0..2 {
                let e = r.get(&[i + 1, j + 1])
                    + r.get(&[0, j + 1]) * v[i]
                    + r.get(&[i + 1, 0]) * v[j]
                    + r.get(&[0, 0]) * v[i] * v[j];
                assert!((rep.block(0).get(&[i, j]) - e).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn round_trip_and_orthogonality() {
        let s = state();
        let (eta, _) = eta_blocks(&s.frame, &s.kin);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..=4 {
            for _ in 0..20 {
                let rep = random_rep(n, &mut rng);
                let r = reconstruct(&rep, &s.kin).unwrap();
                let back = decompose(&r, &s.frame, &s.kin).unwrap();
                assert!(back.max_abs_diff(&rep) < 1e-12);
                assert_eq!(rep.scalar_count(), 3usize.pow(n as u32));
            }
            let rep = random_rep(n, &mut rng);
            let parts: Vec<_> = rep
                .shuffles()
                .iter()
                .map(|sh| {
                    let mut only = SpacetimeTensorRep::zeros(n);
                    *only.block_for_mut(sh) = rep.block_for(sh).clone();
                    reconstruct(&only, &s.kin).unwrap()
                })
                .collect();
            for a in 0..parts.len() {
                for b in 0..a {
                    assert!(eta_inner(&parts[a], &parts[b], &eta).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn instantaneous_parts_have_no_time_proxies() {
        let s = state();
        let q = Tensor::from_fn(2, 3, |i| i.iter().sum::<usize>() as f64 - 1.2);
        let r = reconstruct(&SpacetimeTensorRep::instantaneous(q), &s.kin).unwrap();
        let mut idx = [0usize; 3];
        for lin in 0..r.len() {
            r.unflatten_into(lin, &mut idx);
            if idx.contains(&0) {
                assert_eq!(r[lin], 0.0);
            }
        }
    }

    #[test]
    fn rotating_sphere_observer_change() {
        let lag = SpheroidalChart::<f64>::rotating_sphere();
        let eul = SpheroidalChart::<f64>::unit_sphere();
        let tp = 2.0 * std::f64::consts::PI;
        let map = move |t: f64, y: [f64; 2]| [y[0], y[1] + tp * t];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rep = random_rep(2, &mut rng);
        let out = change_observer(&rep, &lag, &eul, &map, 0.3, [0.9, 0.2], 1e-10).unwrap();
        assert!(out.max_abs_diff(&rep) < 1e-12);
        let bad = change_observer(&rep, &lag, &eul, &|_t, y| y, 0.3, [0.9, 0.2], 1e-10);
        assert!(matches!(bad, Err(MosaicError::EventMismatch { .. })));
    }
}
