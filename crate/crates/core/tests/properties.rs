use mosaic_core::bundle::{decompose, reconstruct, SpacetimeTensorRep};
use mosaic_core::dd::DoubleDouble;
use mosaic_core::derivatives::{star, DerivativeKind};
use mosaic_core::geometry::{LocalState, MaterialMotion, SpheroidalChart};
use mosaic_core::scenarios::{project_q, q_tensor_map, trace, vector_norm};
use mosaic_core::tensor::Tensor;
use mosaic_core::{FlatWord, Real};
use num_traits::Float;
use proptest::prelude::*;

fn state(stretch: f64, spin: f64, t: f64, y1: f64, y2: f64) -> LocalState<f64> {
    LocalState::evaluate(&SpheroidalChart::new(stretch, spin), &MaterialMotion::Lagrangian, t, [y1, y2]).unwrap()
}

fn geometry() -> impl Strategy<Value = LocalState<f64>> {
    (-0.3..0.8f64, -2.0..2.0f64, 0.0..1.0f64, 0.3..2.8f64, 0.0..6.3f64).prop_map(|(k, w, t, a, b)| state(k, w, t, a, b))
}

fn vec2() -> impl Strategy<Value = [f64; 2]> {
    [-2.0..2.0f64, -2.0..2.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bundle_round_trip(s in geometry(), n in 0usize..=3, data in prop::collection::vec(-1.0..1.0f64, 27)) {
        let count = SpacetimeTensorRep::<f64>::zeros(n).scalar_count();
        let rep = SpacetimeTensorRep::from_flat(n, &data[..count]);
        let back = decompose(&reconstruct(&rep, &s.kin).unwrap(), &s.frame, &s.kin).unwrap();
        prop_assert!(back.max_abs_diff(&rep) < 1e-11);
    }

    #[test]
    fn q_tensor_map_is_trace_free_and_even(s in geometry(), r in vec2()) {
        prop_assume!(vector_norm(&s.frame, &r) > 1e-3);
        let q = q_tensor_map(&s.frame, &r).unwrap();
        let scale = 1.0 + q.max_abs();
        prop_assert!(trace(&s.frame, &q).abs() < 1e-12 * scale);
        prop_assert!(q.max_abs_diff(&q_tensor_map(&s.frame, &[-r[0], -r[1]]).unwrap()) < 1e-12 * scale);
    }

    #[test]
    fn projection_is_idempotent(s in geometry(), d in [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64]) {
        let q = Tensor::from_vec(2, 2, d.to_vec());
        let p = project_q(&s.frame, &q);
        prop_assert!(project_q(&s.frame, &p).max_abs_diff(&p) < 1e-12);
        prop_assert!(trace(&s.frame, &p).abs() < 1e-12);
    }

    #[test]
    fn hodge_star_squares_to_minus_identity(s in geometry(), r in vec2()) {
        let x = Tensor::vector(&r);
        let xx = star(&s.frame, &star(&s.frame, &x, 0).unwrap(), 0).unwrap();
        prop_assert!(xx.add(&x).max_abs() < 1e-12);
    }

    #[test]
    fn kind_names_round_trip(n in 1usize..=4, mask in 0u32..16) {
        let sharp: Vec<usize> = (1..=n).filter(|p| mask & (1 << (p - 1)) != 0).collect();
        let word = FlatWord(mosaic_core::Shuffle::from_transversal(n, &sharp).unwrap());
        prop_assert_eq!(word.to_string().parse::<FlatWord>().unwrap(), word.clone());
        let kind = DerivativeKind::Convected(word);
        prop_assert_eq!(kind.name().parse::<DerivativeKind>().unwrap(), kind);
    }

    #[test]
    fn double_double_division(a in -1e3..1e3f64, b in 0.1..1e3f64, c in -1e-17..1e-17f64) {
        let x = DoubleDouble::of(a) + DoubleDouble::of(c);
        let y = DoubleDouble::of(b);
        let e = (x / y) * y - x;
        prop_assert!(e.abs().hi() <= 1e-30 * (1.0 + a.abs()));
        prop_assert_eq!(DoubleDouble::c(a).hi(), a);
    }
}
