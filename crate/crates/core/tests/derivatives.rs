use mosaic_core::bundle::TangentialJet;
use mosaic_core::derivatives::*;
use mosaic_core::fixtures::{random_chart, random_motion, random_point, rng, RandomField};
use mosaic_core::geometry::{LocalState, MaterialMotion, SpheroidalChart};
use mosaic_core::oracle::{oracle_lie_derivative, oracle_material_derivative, oracle_truesdell};
use mosaic_core::FlatWord;

#[test]
fn material_matches_oracle() {
    let mut r = rng(11);
    for n in 0..=3 {
        for _ in 0..3 {
            let chart = random_chart(&mut r);
            let motion = random_motion(&mut r);
            let (t, y) = random_point(&mut r);
            let field = RandomField::new(&mut r, n);
            let s = LocalState::evaluate(&chart, &motion, t, y).unwrap();
            let got = material_derivative(&field.jet(t, y), &s.frame, &s.kin, &s.mat).unwrap();
            let want = oracle_material_derivative(&chart, &motion, &|t, y| field.rep(t, y), t, y).unwrap();
            let err = got.max_abs_diff(&want);
            assert!(err < 1e-8, "n={n} err={err:e}");
        }
    }
}

#[test]
fn convected_matches_oracle() {
    let mut r = rng(12);
    for n in 1..=3 {
        for word in FlatWord::all(n).unwrap() {
            let chart = random_chart(&mut r);
            let motion = random_motion(&mut r);
            let (t, y) = random_point(&mut r);
            let field = RandomField::new(&mut r, n);
            let s = LocalState::evaluate(&chart, &motion, t, y).unwrap();
            let jet = field.jet(t, y);
            let got = convected_derivative(&jet, &word, &s.frame, &s.kin, &s.mat).unwrap();
            let alt = convected_derivative_via_linear_sum(&jet, &word, &s.frame, &s.kin, &s.mat).unwrap();
            let want = oracle_lie_derivative(&chart, &motion, &|t, y| field.rep(t, y), &word, t, y).unwrap();
            let err = got.max_abs_diff(&want);
            assert!(err < 1e-8, "{word} err={err:e}");
            assert!(got.max_abs_diff(&alt) < 1e-10, "{word} linear-sum path");
        }
    }
}

#[test]
fn jaumann_paths_agree() {
    let mut r = rng(13);
    for n in 0..=3 {
        let chart = random_chart(&mut r);
        let motion = random_motion(&mut r);
        let (t, y) = random_point(&mut r);
        let field = RandomField::new(&mut r, n);
        let s = LocalState::evaluate(&chart, &motion, t, y).unwrap();
        let jet = field.jet(t, y);
        let a = jaumann_derivative(&jet, &s.frame, &s.kin, &s.mat).unwrap();
        let b = jaumann_derivative_closed_form(&jet, &s.frame, &s.kin, &s.mat).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12, "n={n} {:e}", a.max_abs_diff(&b));
    }
}

#[test]
fn fast_paths_match_general() {
    let mut r = rng(14);
    for n in 1..=2 {
        let mut kinds = vec![DerivativeKind::Material, DerivativeKind::Jaumann];
        kinds.extend(FlatWord::all(n).unwrap().into_iter().map(DerivativeKind::Convected));
        for kind in kinds {
            let chart = random_chart(&mut r);
            let motion = random_motion(&mut r);
            let (t, y) = random_point(&mut r);
            let field = RandomField::new(&mut r, n);
            let s = LocalState::evaluate(&chart, &motion, t, y).unwrap();
            let tj = field.tangential_jet(t, y);
            let fast = match tangential_rate(&kind, &tj, &s).unwrap().value {
                RateValue::Tangential(q) => q,
                _ => unreachable!(),
            };
            let general = match rep_rate(&kind, &tj.to_rep_jet(), &s).unwrap().value {
                RateValue::Rep(r) => r.block(0).clone(),
                _ => unreachable!(),
            };
            assert!(fast.max_abs_diff(&general) < 1e-12, "{kind} {:e}", fast.max_abs_diff(&general));
        }
    }
}

#[test]
fn truesdell_matches_oracle_both_orientations() {
    let mut r = rng(15);
    for _ in 0..3 {
        let chart = random_chart(&mut r);
        let motion = random_motion(&mut r);
        let (t, y) = random_point(&mut r);
        let field = RandomField::new(&mut r, 2);
        let s = LocalState::evaluate(&chart, &motion, t, y).unwrap();
        let got = truesdell_rate(&field.tangential_jet(t, y), &s.frame, &s.kin, &s.mat).unwrap();
        for sign in [1.0, -1.0] {
            let want = oracle_truesdell(&chart, &motion, &|t, y| field.tangential(t, y), sign, t, y).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-8, "sign {sign}: {:e}", got.max_abs_diff(&want));
        }
    }
}

#[test]
fn scalar_collapse_is_bitwise() {
    let mut r = rng(16);
    let chart = random_chart(&mut r);
    let motion = random_motion(&mut r);
    let (t, y) = random_point(&mut r);
    let field = RandomField::new(&mut r, 0);
    let s = LocalState::evaluate(&chart, &motion, t, y).unwrap();
    let tj = field.tangential_jet(t, y);
    let base = scalar_rate(&tj, &s.frame, &s.mat).unwrap();
    let jet = tj.to_rep_jet();
    let kinds = [DerivativeKind::Material, DerivativeKind::Jaumann, DerivativeKind::upper(0), DerivativeKind::lower(0)];
    for kind in &kinds {
        let v = match rep_rate(kind, &jet, &s).unwrap().value {
            RateValue::Rep(r) => r.block(0)[0],
            _ => unreachable!(),
        };
        assert_eq!(v.to_bits(), base.to_bits(), "{kind}");
    }
    let j = jaumann_derivative_closed_form(&jet, &s.frame, &s.kin, &s.mat).unwrap();
    assert_eq!(j.block(0)[0].to_bits(), base.to_bits());
    let tt = tangential_total_derivative(&tj, &s.frame, &s.kin, &s.mat).unwrap();
    assert_eq!(tt[0].to_bits(), base.to_bits());
}

#[test]
fn levi_civita_material_rate_vanishes() {
    let chart = SpheroidalChart::<f64>::helical_spheroid();
    let motion = MaterialMotion::Lagrangian;
    let eps = |t: f64, y: [f64; 2]| {
        let f = mosaic_core::geometry::evaluate_frame(&chart, t, y).unwrap();
        let e = f.raise_both(&f.eps);
        mosaic_core::tensor::Tensor::matrix2(&e)
    };
    let (t, y) = (0.4, [0.9, 1.3]);
    let s = LocalState::evaluate(&chart, &motion, t, y).unwrap();
    let jet = TangentialJet::from_fn(&eps, t, y);
    let q = instantaneous_two_tensor_rate(&DerivativeKind::Material, &jet, &s.frame, &s.kin, &s.mat).unwrap();
    assert!(q.max_abs() < 1e-9, "{:e}", q.max_abs());
}
