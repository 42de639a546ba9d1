use std::process::ExitCode;
use std::time::{Duration, Instant};

use mosaic_core::verify::{self, Check};

struct Criterion {
    id: u8,
    title: &'static str,
    checks: Vec<Check>,
}

fn timed(f: impl FnOnce() -> Vec<Check>) -> (Vec<Check>, Duration) {
    let t = Instant::now();
    let c = f();
    (c, t.elapsed())
}

fn runtime(id: u8, name: &str, d: Duration, limit: f64) -> Check {
    Check::below(id, name, Ok(d.as_secs_f64()), limit)
}

fn main() -> ExitCode {
    let seed = 42;
    let (mut c1, d1) = timed(verify::stretching_conservation);
    c1.push(runtime(1, "runtime [s]", d1, 10.0));
    let (mut c7, d7) = timed(|| verify::oracle_suite(seed));
    c7.push(runtime(7, "runtime [s]", d7, 60.0));
    let criteria = [
        Criterion { id: 1, title: "stretching spheroid material/jaumann transport", checks: c1 },
        Criterion { id: 2, title: "stretching spheroid upper/lower convected transport", checks: verify::stretching_convected() },
        Criterion { id: 3, title: "rotating sphere Foucault rotation and stationarity", checks: verify::rotating_sphere() },
        Criterion { id: 4, title: "observer invariance, eulerian vs lagrangian", checks: verify::observer_invariance() },
        Criterion { id: 5, title: "helical spheroid circulation times", checks: verify::circulation_times() },
        Criterion { id: 6, title: "helical spheroid Q-tensor table and closure", checks: verify::q_tensor_table() },
        Criterion { id: 7, title: "oracle suite, 20 random charts, ranks 0-3", checks: c7 },
        Criterion { id: 8, title: "identity suite", checks: verify::identity_suite(seed) },
        Criterion { id: 9, title: "RK4 convergence ratio", checks: verify::rk4_convergence() },
    ];
    let mut all = true;
    for c in &criteria {
        for k in &c.checks {
            let bound = match (k.lower, k.upper) {
                (Some(l), Some(u)) => format!("in [{l}, {u}]"),
                (Some(l), None) => format!(">= {l:e}"),
                (None, Some(u)) => format!("< {u:e}"),
                (None, None) => String::new(),
            };
            let value = k.value.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3e}"));
            let detail = k.detail.as_ref().map_or_else(String::new, |d| format!(" ({d})"));
            println!("    [{}] {}: {value} {bound}{detail}", if k.passed { "ok" } else { "FAIL" }, k.name);
        }
        let ok = c.checks.iter().all(|k| k.passed);
        all &= ok;
        println!("{} criterion {}: {}", if ok { "PASS" } else { "FAIL" }, c.id, c.title);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
