//! Seeded random charts, motions and fields for property and oracle checks.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bundle::{SpacetimeTensorRep, TangentialJet, TensorFieldJet};
use crate::geometry::{FourierMode, MaterialMotion, SpheroidalChart, VelocityJet};
use crate::tensor::Tensor;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Perturbed, stretching and spinning sphere.
pub fn random_chart(rng: &mut impl Rng) -> SpheroidalChart<f64> {
    let modes = (0..2)
        .map(|_| FourierMode {
            amplitude: rng.gen_range(0.02..0.08),
            m: rng.gen_range(1..3) as f64,
            n: rng.gen_range(0..3) as f64,
            w: rng.gen_range(-2.0..2.0),
            phase: rng.gen_range(0.0..2.0 * PI),
        })
        .collect();
    SpheroidalChart::new(rng.gen_range(-0.3..0.8), rng.gen_range(-2.0..2.0)).with_modes(modes)
}

/// Event away from the poles.
pub fn random_point(rng: &mut impl Rng) -> (f64, [f64; 2]) {
    (rng.gen_range(0.0..0.8), [rng.gen_range(0.6..2.5), rng.gen_range(0.0..2.0 * PI)])
}

/// Smooth scalar c₀ + c₁ sin(a t + b y¹ + c y² + φ).
#[derive(Debug, Clone, Copy)]
struct Wave {
    c0: f64,
    c1: f64,
    k: [f64; 3],
    phase: f64,
}

impl Wave {
    fn random(rng: &mut impl Rng) -> Self {
        Self {
            c0: rng.gen_range(-1.0..1.0),
            c1: rng.gen_range(-0.7..0.7),
            k: [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5), rng.gen_range(-2i32..=2) as f64],
            phase: rng.gen_range(0.0..2.0 * PI),
        }
    }

    fn eval(&self, t: f64, y: [f64; 2]) -> f64 {
        self.c0 + self.c1 * (self.k[0] * t + self.k[1] * y[0] + self.k[2] * y[1] + self.phase).sin()
    }
}

/// Random smooth tangential material velocity, jets by finite differences.
pub fn random_motion(rng: &mut impl Rng) -> MaterialMotion<f64> {
    let w = [Wave::random(rng), Wave::random(rng)];
    let f = move |t: f64, y: [f64; 2]| [0.5 * w[0].eval(t, y), 0.5 * w[1].eval(t, y)];
    MaterialMotion::field(move |t, y| VelocityJet::from_fn(&f, t, y))
}

/// Random smooth rep field of rank n.
#[derive(Clone)]
pub struct RandomField {
    n: usize,
    waves: Arc<Vec<Wave>>,
}

impl RandomField {
    pub fn new(rng: &mut impl Rng, n: usize) -> Self {
        let count = SpacetimeTensorRep::<f64>::zeros(n).scalar_count();
        Self { n, waves: Arc::new((0..count).map(|_| Wave::random(rng)).collect()) }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn rep(&self, t: f64, y: [f64; 2]) -> SpacetimeTensorRep<f64> {
        let data: Vec<f64> = self.waves.iter().map(|w| w.eval(t, y)).collect();
        SpacetimeTensorRep::from_flat(self.n, &data)
    }

    /// Only the instantaneous block, as a tangential tensor.
    pub fn tangential(&self, t: f64, y: [f64; 2]) -> Tensor<f64> {
        self.rep(t, y).block(0).clone()
    }

    pub fn jet(&self, t: f64, y: [f64; 2]) -> TensorFieldJet<f64> {
        TensorFieldJet::from_fn(&|t, y| self.rep(t, y), t, y)
    }

    pub fn tangential_jet(&self, t: f64, y: [f64; 2]) -> TangentialJet<f64> {
        TangentialJet::from_fn(&|t, y| self.tangential(t, y), t, y)
    }
}
