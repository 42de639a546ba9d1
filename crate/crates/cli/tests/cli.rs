use std::path::Path;
use std::process::{Command, Output};

use mosaic_core::derivatives::DerivativeKind;
use mosaic_core::scenarios::{closed_form_solution, InitialField, Scenario, ScenarioKind};

fn mosaic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mosaic")).args(args).output().unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn rotating_sphere_run_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rot.csv");
    let o = mosaic(&[
        "run", "--scenario", "rotating-sphere", "--derivative", "material", "--t-end", "1", "--dt", "1e-3", "--grid",
        "4x8", "--observer", "lagrangian", "--output", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["t", "y1", "y2", "r1", "r2", "norm", "phi1", "phi2"]);
    let times: std::collections::BTreeSet<String> = rows.iter().map(|r| r[0].clone()).collect();
    assert!(times.len() <= 101);
    let sc = Scenario::new(ScenarioKind::RotatingSphere);
    let last: Vec<_> = rows.iter().filter(|r| num(&r[0]) == 1.0).collect();
    assert_eq!(last.len(), 32);
    for r in last {
        let y = [num(&r[1]), num(&r[2])];
        let c = closed_form_solution(&sc, &DerivativeKind::Material, &InitialField::Standard, 1, 1.0, y).unwrap();
        assert!((num(&r[3]) - c[0]).abs() < 1e-8 && (num(&r[4]) - c[1]).abs() < 1e-8);
        assert!((num(&r[5]) - 1.0).abs() < 1e-10);
        // 17 significant digits.
        assert_eq!(r[3].split('e').next().unwrap().trim_start_matches('-').len(), 18);
    }
}

#[test]
fn lower_convected_norm_decays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("flat.csv");
    let o = mosaic(&[
        "run", "--scenario", "stretching-spheroid", "--derivative", "lower-convected", "--grid", "3x2", "--dt", "1e-2",
        "--output", out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (_, rows) = read_csv(&out);
    for r in rows.iter().filter(|r| num(&r[0]) == 1.0) {
        assert!(num(&r[5]) < 1.0);
    }
}

#[test]
fn qtensor_json_output() {
    let o = mosaic(&[
        "run", "--scenario", "helical-spheroid", "--field", "qtensor", "--derivative", "jaumann", "--grid", "2x2", "--dt",
        "1e-2", "--t-end", "0.1", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cols: Vec<&str> = v["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(cols[cols.len() - 4..], ["trace", "asym", "eig1", "eig2"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 11 * 4);
    assert_eq!(v["config"]["grid"], "2x2");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["run", "--scenario", "helical-spheroid", "--derivative", "material", "--grid", "5x7", "--dt", "1e-2"];
    let a = Command::new(env!("CARGO_BIN_EXE_mosaic")).args(args).env("MOSAIC_THREADS", "1").output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_mosaic")).args(args).env("MOSAIC_THREADS", "3").output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"scenario": "rotating-sphere", "derivative": "upper-convected", "grid": "2x3", "dt": 0.01}"#).unwrap();
    let o = mosaic(&["run", "--config", cfg.to_str().unwrap(), "--t-end", "0.05"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 6 * 6);

    std::fs::write(&cfg, r#"{"scenario": "rotating-sphere", "bogus": 1}"#).unwrap();
    assert_eq!(mosaic(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        vec!["run", "--grid", "0x32"],
        vec!["run", "--grid", "banana"],
        vec!["run", "--scenario", "flat-torus"],
        vec!["run", "--derivative", "sideways"],
        vec!["run", "--dt", "-1"],
        vec!["run", "--derivative", "truesdell", "--field", "vector"],
        vec!["run", "--observer", "eulerian", "--scenario", "stretching-spheroid"],
        vec!["verify", "--suite", "everything"],
    ] {
        let o = mosaic(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn solver_errors_exit_3() {
    let o = mosaic(&["run", "--scenario", "rotating-sphere", "--observer", "eulerian", "--grid", "2x64", "--dt", "0.1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mosaic(&["run", "--scenario", "rotating-sphere", "--grid", "2x1", "--dt", "0.9", "--t-end", "200"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    for suite in ["identities", "oracle"] {
        let o = mosaic(&["verify", "--suite", suite, "--seed", "42"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["seed"], 42);
        assert!(v["checks"].as_array().unwrap().len() >= 9);
    }
    let a = mosaic(&["verify", "--suite", "identities", "--seed", "7"]);
    let b = mosaic(&["verify", "--suite", "identities", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}
