//! Acceptance criteria, checked exactly. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use euler_core::audit::battery::*;
use euler_core::audit::AuditReport;
use euler_core::geometry::rational::fmt_rational;
use euler_core::geometry::EmbeddedComplex;
use euler_core::transforms::ect_shape;

const SEED: u64 = 20240611;

struct Outcome {
    ok: bool,
    detail: String,
}

fn first_failure(sweeps: &[&Sweep]) -> String {
    sweeps
        .iter()
        .flat_map(|s| &s.reports)
        .find(|r| !r.passed())
        .map(|r: &AuditReport| {
            let w = &r.failures[0];
            format!("; first failure [{}] {}: expected {}, got {}", r.tag, w.inputs, w.expected, w.got)
        })
        .unwrap_or_default()
}

fn sweeps_outcome(sweeps: &[&Sweep], extra_ok: bool, extra: String) -> Outcome {
    let ok = extra_ok && sweeps.iter().all(|s| s.passed());
    let counts: Vec<String> =
        sweeps.iter().map(|s| format!("{} units={} cases={} failures={}", s.name, s.units, s.cases(), s.failures())).collect();
    Outcome { ok, detail: format!("{}{extra}{}", counts.join(", "), first_failure(sweeps)) }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn under(d: Duration, limit: Duration) -> (bool, String) {
    (d < limit, format!(", runtime {:.2?} (limit {:?})", d, limit))
}

fn run_verify(workers: usize, dir: &Path) -> (i32, Vec<u8>, Vec<u8>) {
    let status = Command::new(env!("CARGO_BIN_EXE_euler"))
        .args(["verify", "--fixtures", "builtin", "--seed", &SEED.to_string(), "--workers", &workers.to_string()])
        .arg("--out")
        .arg(dir)
        .output()
        .expect("run euler");
    let read = |f: &str| std::fs::read(dir.join(f)).unwrap_or_default();
    (status.status.code().unwrap_or(-1), read("report.json"), read("report.txt"))
}

fn main() {
    let fx = FixtureSet::builtin();
    let mut results: Vec<(&str, Outcome)> = Vec::new();

    // 1
    let ((), dt) = timed(|| {
        for v in &fx.directions_2d {
            ect_shape(&fx.disk, v).expect("2d");
        }
    });
    let disk = sweep_disk_example(&fx.disk, &fx.directions_2d);
    let (fast, t) = under(dt, Duration::from_secs(1));
    let boundary = fx.disk.vertices().len() - 1;
    let breakpoints: Vec<String> = fx
        .directions_2d
        .iter()
        .map(|v| ect_shape(&fx.disk, v).expect("2d").breakpoints().iter().map(fmt_rational).collect::<Vec<_>>().join(" "))
        .collect();
    results.push((
        "disk ECT is 0 then 1, breaking at the minimal height",
        sweeps_outcome(
            &[&disk],
            fast && boundary >= 64 && disk.units == 8,
            format!(", boundary vertices {boundary}, breakpoints [{}]{t}", breakpoints.join(", ")),
        ),
    ));

    // 2
    let ((equiv, ect_rc), dt) = timed(|| sweep_oracle(SEED, 200));
    let (fast, t) = under(dt, Duration::from_secs(30));
    results.push(("per-cell rule equals clipping oracle", sweeps_outcome(&[&equiv], fast && equiv.units >= 200, t)));

    // 3, 4
    let (fixture_rc, vanish, select_s) = sweep_fixture_continuity(&fx);
    results.push((
        "right continuity of all t-curves, left-continuous control rejected",
        sweeps_outcome(&[&disk, &ect_rc, &fixture_rc, &select_s], true, String::new()),
    ));
    results.push(("fixture curves vanish left of the first breakpoint", sweeps_outcome(&[&vanish], vanish.units > 0, String::new())));

    // 5
    let inversion = sweep_inversion(&fx);
    results.push(("invert(smooth(e)) == e", sweeps_outcome(&[&inversion], inversion.units >= 100, String::new())));

    // 6
    let ert_ect = sweep_ert_extends_ect(&fx);
    results.push(("ERT equals ECT on integer-valued functions", sweeps_outcome(&[&ert_ect], true, String::new())));

    // 7
    let fc = sweep_floor_ceiling(&fx, SEED);
    let q_ok = fx.rational_images.iter().all(|(_, _, g)| g.common_denominator() <= 12.into());
    results.push((
        "floor/ceiling approximants equal ERT at multiples of q",
        sweeps_outcome(&[&fc], fc.units >= 20 && q_ok, String::new()),
    ));

    // 8
    let middle = sweep_middle_continuity(&fx);
    results.push(("level-set continuity for 5 PL functions on 3 meshes", sweeps_outcome(&[&middle], middle.units == 5, String::new())));

    // 9
    let sl = sweep_select_lect(&fx, SEED, 120);
    results.push(("SELECT/LECT/ECT identity", sweeps_outcome(&[&sl], sl.units >= 100, String::new())));

    // 10
    let (betti, dt) = timed(|| sweep_betti(&fx));
    let (fast, t) = under(dt, Duration::from_secs(60));
    results.push(("Betti curves right continuous, Euler–Poincaré matches oracle", sweeps_outcome(&[&betti], fast, t)));

    // 11
    let axioms = sweep_axioms(SEED);
    results.push(("χ axioms on cell models", sweeps_outcome(&[&axioms], true, String::new())));

    // 12
    let dir = tempfile::tempdir().expect("tempdir");
    let (a, b) = (dir.path().join("w1"), dir.path().join("w8"));
    let (code1, json1, text1) = run_verify(1, &a);
    let (code8, json8, text8) = run_verify(8, &b);
    let same = !json1.is_empty() && json1 == json8 && text1 == text8;
    results.push((
        "verify reports identical for 1 and 8 workers",
        Outcome {
            ok: same && code1 == 0 && code8 == 0,
            detail: format!("exit codes {code1}/{code8}, report.json {} bytes, identical: {same}", json1.len()),
        },
    ));

    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} criterion {:>2}: {name} ({})", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
