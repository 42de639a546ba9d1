use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

use mosaic_core::derivatives::DerivativeKind;
use mosaic_core::geometry::{evaluate_frame, SpheroidalChart};
use mosaic_core::scenarios::*;
use mosaic_core::tensor::Tensor;
use mosaic_core::MosaicError;

fn standard(y1: f64) -> [f64; 2] {
    [-FRAC_1_SQRT_2, FRAC_1_SQRT_2 / y1.sin()]
}

fn small(scenario: ScenarioKind, kind: DerivativeKind, field: FieldKind) -> TransportProblem<f64> {
    let mut p = TransportProblem::new(Scenario::new(scenario), kind, field);
    p.grid = Grid::new(4, 6);
    p.dt = 2e-3;
    p
}

#[test]
fn standard_field_diagnostics() {
    let y = [0.9, 0.4];
    let f = evaluate_frame(&SpheroidalChart::<f64>::unit_sphere(), 0.0, y).unwrap();
    let d = diagnostics(&f, &Tensor::vector(&standard(y[0]))).unwrap();
    assert!((d.norm - 1.0).abs() < 1e-14);
    assert!((d.phi.unwrap()[1] - FRAC_PI_4).abs() < 1e-14);

    let q = q_tensor_map(&f, &standard(y[0])).unwrap();
    assert!(q.get(&[0, 0]).abs() < 1e-15 && q.get(&[1, 1]).abs() < 1e-15);
    assert!((q.get(&[0, 1]) + 1.0 / y[0].sin()).abs() < 1e-14);
    let d = diagnostics(&f, &q).unwrap();
    assert!(d.trace.unwrap().abs() < 1e-14);
    assert!(d.asym.unwrap().abs() < 1e-14);
    let ev = d.eigenvalues.unwrap();
    assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
}

#[test]
fn q_tensor_map_invariants() {
    let y = [1.2, 0.0];
    let f = evaluate_frame(&SpheroidalChart::<f64>::helical_spheroid(), 0.3, y).unwrap();
    let r = [0.7, -0.4];
    let q = q_tensor_map(&f, &r).unwrap();
    assert!(q.max_abs_diff(&q_tensor_map(&f, &[-r[0], -r[1]]).unwrap()) < 1e-15);
    assert!(trace(&f, &q).abs() < 1e-14);
    let n = vector_norm(&f, &r);
    let low = f.lower(&r);
    for i in 0..2 {
        let qr = q.get(&[i, 0]) * low[0] + q.get(&[i, 1]) * low[1];
        assert!((qr - n * r[i]).abs() < 1e-14);
    }
    assert_eq!(q_tensor_map(&f, &[0.0, 0.0]), Err(MosaicError::ZeroField));
}

#[test]
fn projection_is_idempotent() {
    let f = evaluate_frame(&SpheroidalChart::<f64>::stretching_spheroid(), 0.5, [0.8, 1.0]).unwrap();
    let id = Tensor::from_fn(2, 2, |ix| f.g_inv[ix[0]][ix[1]]);
    assert!(project_q(&f, &id).max_abs() < 1e-15);
    let q = Tensor::from_vec(2, 2, vec![0.3, -1.1, 0.6, 2.0]);
    let p = project_q(&f, &q);
    assert!(project_q(&f, &p).max_abs_diff(&p) < 1e-14);
    assert!(trace(&f, &p).abs() < 1e-14);
    assert!((p.get(&[0, 1]) - p.get(&[1, 0])).abs() < 1e-15);
}

#[test]
fn closed_forms_start_at_initial_field() {
    for sk in ScenarioKind::ALL {
        let s = Scenario::new(sk);
        for (kind, rank) in [
            (DerivativeKind::Material, 1),
            (DerivativeKind::Jaumann, 2),
            (DerivativeKind::upper(1), 1),
            (DerivativeKind::lower(2), 2),
            (DerivativeKind::Truesdell, 2),
        ] {
            let y = [0.7, 2.1];
            let c = closed_form_solution(&s, &kind, &InitialField::Standard, rank, 0.0, y).unwrap();
            let i = initial_tensor(&s, &InitialField::Standard, rank, y).unwrap();
            assert!(c.max_abs_diff(&i) < 1e-15, "{sk} {kind}");
        }
    }
    let s = Scenario::<f64>::new(ScenarioKind::HelicalSpheroid);
    let e = closed_form_solution(&s, &DerivativeKind::Truesdell, &InitialField::Standard, 1, 0.5, [1.0, 0.0]);
    assert!(matches!(e, Err(MosaicError::UnsupportedKind { .. })));
}

#[test]
fn stretching_material_closed_form_example() {
    let s = Scenario::new(ScenarioKind::StretchingSpheroid);
    let (t, y1) = (0.7f64, 1.1f64);
    let r = closed_form_solution(&s, &DerivativeKind::Material, &InitialField::Standard, 1, t, [y1, 0.0]).unwrap();
    let expect = -FRAC_1_SQRT_2 / (1.0 + t * (2.0 + t) * y1.sin().powi(2)).sqrt();
    assert!((r[0] - expect).abs() < 1e-15);
    assert!((r[1] - standard(y1)[1]).abs() < 1e-15);
}

#[test]
fn helical_jaumann_equals_stretching_jaumann() {
    let h = small(ScenarioKind::HelicalSpheroid, DerivativeKind::Jaumann, FieldKind::Vector);
    let s = small(ScenarioKind::StretchingSpheroid, DerivativeKind::Jaumann, FieldKind::Vector);
    let (a, b) = (solve(&h).unwrap(), solve(&s).unwrap());
    for (x, y) in a.values.last().unwrap().iter().zip(b.values.last().unwrap()) {
        assert!(x.max_abs_diff(y) < 1e-10);
    }
}

#[test]
fn lower_convected_shrinks_norm() {
    let p = small(ScenarioKind::StretchingSpheroid, DerivativeKind::lower(1), FieldKind::Vector);
    let tr = solve(&p).unwrap();
    let t = *tr.times.last().unwrap();
    for (n, y) in tr.nodes.iter().enumerate() {
        let f = evaluate_frame(&p.scenario.lagrangian_chart(), t, *y).unwrap();
        let r = &tr.values.last().unwrap()[n];
        assert!(vector_norm(&f, &[r[0], r[1]]) < 1.0 - 1e-3);
    }
}

#[test]
fn polar_and_apolar_transport_agree() {
    for sk in [ScenarioKind::StretchingSpheroid, ScenarioKind::HelicalSpheroid] {
        for kind in [DerivativeKind::Material, DerivativeKind::Jaumann] {
            let v = solve(&small(sk, kind.clone(), FieldKind::Vector)).unwrap();
            let p = small(sk, kind.clone(), FieldKind::QTensor);
            let q = solve(&p).unwrap();
            for (k, &t) in v.times.iter().enumerate() {
                for (n, y) in v.nodes.iter().enumerate() {
                    let f = evaluate_frame(&p.scenario.lagrangian_chart(), t, *y).unwrap();
                    let r = &v.values[k][n];
                    let rho = q_tensor_map(&f, &[r[0], r[1]]).unwrap();
                    let e = rho.max_abs_diff(&q.values[k][n]) / rho.max_abs();
                    assert!(e < 1e-6, "{sk} {kind} t={t}: {e:e}");
                }
            }
        }
    }
}

#[test]
fn truesdell_transport_matches_closed_form() {
    let p = small(ScenarioKind::HelicalSpheroid, DerivativeKind::Truesdell, FieldKind::QTensor);
    let tr = solve(&p).unwrap();
    let t = *tr.times.last().unwrap();
    for (n, y) in tr.nodes.iter().enumerate() {
        let c = closed_form_solution(&p.scenario, &p.kind, &p.initial, 2, t, *y).unwrap();
        assert!(tr.values.last().unwrap()[n].max_abs_diff(&c) < 1e-9);
    }
}

#[test]
fn circulation_time_limits_and_errors() {
    let rot = Scenario::<f64>::new(ScenarioKind::RotatingSphere);
    let y1 = FRAC_PI_2 - FRAC_PI_6;
    for alpha in 1..=3 {
        let t = circulation_time(&rot, y1, alpha).unwrap();
        assert!((t - alpha as f64).abs() < 1e-10, "{alpha}: {t}");
    }
    let hel = Scenario::new(ScenarioKind::HelicalSpheroid);
    assert!((circulation_time(&hel, y1, 1).unwrap() - 1.5286).abs() < 1e-3);
    assert_eq!(circulation_time(&hel, FRAC_PI_2, 1), Err(MosaicError::NoCirculation));
    let st = Scenario::new(ScenarioKind::StretchingSpheroid);
    assert_eq!(circulation_time(&st, y1, 1), Err(MosaicError::NoCirculation));
}

#[test]
fn eulerian_zero_field_stays_zero() {
    let mut p = small(ScenarioKind::RotatingSphere, DerivativeKind::Material, FieldKind::Vector);
    p.observer = Observer::Eulerian;
    p.grid = Grid::new(2, 16);
    p.initial = InitialField::Constant([0.0, 0.0]);
    let tr = solve(&p).unwrap();
    assert!(tr.values.iter().flatten().all(|r| r.max_abs() == 0.0));
}

#[test]
fn eulerian_matches_advected_closed_form() {
    let mut p = small(ScenarioKind::RotatingSphere, DerivativeKind::upper(1), FieldKind::Vector);
    p.observer = Observer::Eulerian;
    p.grid = Grid::new(3, 64);
    p.dt = 1e-3;
    p.t_end = 0.25;
    p.initial = InitialField::Modulated;
    let tr = solve(&p).unwrap();
    let t = *tr.times.last().unwrap();
    for (n, y) in tr.nodes.iter().enumerate() {
        let c = closed_form_eulerian(&p.scenario, &p.kind, &p.initial, 1, t, *y).unwrap();
        assert!(tr.values.last().unwrap()[n].max_abs_diff(&c) < 1e-4);
    }
}

#[test]
fn solver_errors() {
    let mut p = small(ScenarioKind::RotatingSphere, DerivativeKind::Material, FieldKind::Vector);
    p.observer = Observer::Eulerian;
    p.grid = Grid::new(2, 256);
    p.dt = 1e-2;
    assert!(matches!(solve(&p), Err(MosaicError::CflViolation { .. })));

    let mut p = small(ScenarioKind::StretchingSpheroid, DerivativeKind::Material, FieldKind::Vector);
    p.observer = Observer::Eulerian;
    assert!(matches!(solve(&p), Err(MosaicError::UnsupportedKind { .. })));

    let mut p = small(ScenarioKind::StretchingSpheroid, DerivativeKind::Material, FieldKind::Vector);
    p.grid = Grid::new(0, 4);
    assert!(matches!(solve(&p), Err(MosaicError::Config(_))));
    p.grid = Grid::new(2, 2);
    p.dt = -1.0;
    assert!(matches!(solve(&p), Err(MosaicError::Config(_))));

    let p = small(ScenarioKind::StretchingSpheroid, DerivativeKind::Truesdell, FieldKind::Vector);
    assert!(matches!(solve(&p), Err(MosaicError::UnsupportedKind { .. })));
    let p = small(ScenarioKind::StretchingSpheroid, DerivativeKind::upper(2), FieldKind::Vector);
    assert!(matches!(solve(&p), Err(MosaicError::UnsupportedKind { .. })));

    let mut p = small(ScenarioKind::RotatingSphere, DerivativeKind::Material, FieldKind::Vector);
    p.dt = 0.9;
    p.t_end = 200.0;
    assert!(matches!(solve(&p), Err(MosaicError::StepTooLarge { .. })));
}

#[test]
fn sampling_keeps_at_most_101_times() {
    let mut p = small(ScenarioKind::StretchingSpheroid, DerivativeKind::Material, FieldKind::Vector);
    p.dt = 1e-3;
    p.grid = Grid::new(1, 1);
    let tr = solve(&p).unwrap();
    assert!(tr.times.len() <= 101);
    assert_eq!(tr.times[0], 0.0);
    assert_eq!(*tr.times.last().unwrap(), 1.0);
    assert_eq!(tr.nodes, vec![[FRAC_PI_2, 0.0]]);
}

#[test]
fn solves_are_deterministic() {
    let p = small(ScenarioKind::HelicalSpheroid, DerivativeKind::Material, FieldKind::QTensor);
    let a = solve(&p).unwrap();
    let b = solve(&p).unwrap();
    let bits = |tr: &Trajectory<f64>| -> Vec<u64> { tr.values.iter().flatten().flat_map(|x| x.data().to_vec()).map(f64::to_bits).collect() };
    assert_eq!(bits(&a), bits(&b));
    assert_eq!(a.times, b.times);
}

#[test]
fn single_precision_smoke() {
    let mut p = TransportProblem::<f32>::new(Scenario::new(ScenarioKind::StretchingSpheroid), DerivativeKind::Material, FieldKind::Vector);
    p.grid = Grid::new(3, 4);
    p.dt = 1e-2;
    let tr = solve(&p).unwrap();
    let t = *tr.times.last().unwrap();
    for (n, y) in tr.nodes.iter().enumerate() {
        let c = closed_form_solution(&p.scenario, &p.kind, &p.initial, 1, t, *y).unwrap();
        assert!(tr.values.last().unwrap()[n].max_abs_diff(&c) < 1e-4);
    }
}
