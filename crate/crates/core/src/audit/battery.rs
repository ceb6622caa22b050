//! The full audit battery over the bundled fixture set.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::fixtures;
use super::report::AuditReport;
use crate::euler::{chi_clipped_oracle, chi_preimage, IntervalQuery};
use crate::geometry::rational::{fmt_rational, half, int, ratio, Rational};
use crate::geometry::{
    height_summaries, pl_summaries, sample_directions, CellConstFunction, CubicalComplex, Direction,
    DirectionScheme, EmbeddedComplex, LowerCellConvention, SimplicialComplex,
};
use crate::transforms::{
    ect_shape, ert, ert_value, lect, lect_value, par_map, select, select_in_s, select_value, Continuity, StepCurve,
};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryConfig {
    pub seed: u64,
    pub workers: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { seed: 0, workers: 1 }
    }
}

/// One group of related audits. `units` counts the curves, cases or probes
/// the group covered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub name: String,
    pub units: usize,
    pub reports: Vec<AuditReport>,
}

impl Sweep {
    fn new(name: &str) -> Self {
        Sweep { name: name.to_string(), units: 0, reports: Vec::new() }
    }

    fn push(&mut self, report: AuditReport) {
        self.units += 1;
        self.reports.push(report);
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(AuditReport::passed)
    }

    pub fn cases(&self) -> usize {
        self.reports.iter().map(|r| r.cases).sum()
    }

    pub fn failures(&self) -> usize {
        self.reports.iter().map(|r| r.failures.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryOutcome {
    pub seed: u64,
    pub sweeps: Vec<Sweep>,
}

impl BatteryOutcome {
    pub fn passed(&self) -> bool {
        self.sweeps.iter().all(Sweep::passed)
    }

    pub fn sweep(&self, name: &str) -> Option<&Sweep> {
        self.sweeps.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("audit battery, seed {}\n", self.seed);
        for s in &self.sweeps {
            let _ = writeln!(
                out,
                "{} {:<28} units={:<5} cases={:<7} failures={}",
                if s.passed() { "PASS" } else { "FAIL" },
                s.name,
                s.units,
                s.cases(),
                s.failures()
            );
            for r in s.reports.iter().filter(|r| !r.passed()) {
                let _ = writeln!(out, "  {}", r.summary_line());
                for w in &r.failures {
                    let _ = writeln!(out, "    {}: expected {}, got {}", w.inputs, w.expected, w.got);
                }
            }
            for r in &s.reports {
                for n in &r.notes {
                    let _ = writeln!(out, "  note: {n}");
                }
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "ALL PASS" } else { "FAILURES PRESENT" });
        out
    }
}

/// Meshes, images and directions shared by every sweep.
pub struct FixtureSet {
    pub disk: SimplicialComplex,
    pub annulus: SimplicialComplex,
    pub torus: SimplicialComplex,
    pub ball: SimplicialComplex,
    /// Integer-valued images.
    pub integer_images: Vec<(String, CubicalComplex, CellConstFunction)>,
    /// Images with non-integer rational values.
    pub rational_images: Vec<(String, CubicalComplex, CellConstFunction)>,
    pub directions_2d: Vec<Direction>,
    pub directions_3d: Vec<Direction>,
}

impl FixtureSet {
    pub fn builtin() -> Self {
        let upper = LowerCellConvention::Upper;
        let img = |name: &str, (k, g): (CubicalComplex, CellConstFunction)| (name.to_string(), k, g);
        FixtureSet {
            disk: fixtures::disk(64),
            annulus: fixtures::annulus(24),
            torus: fixtures::torus(8, 6),
            ball: fixtures::ball3(),
            integer_images: vec![
                img("two-pixel(1,2)", fixtures::two_pixel(int(1), int(2))),
                img("checkerboard-8", fixtures::image(fixtures::checkerboard(8), upper)),
                img("checkerboard-8-lower", fixtures::image(fixtures::checkerboard(8), LowerCellConvention::Lower)),
                img("blob-8", fixtures::image(fixtures::integer_blob(8), upper)),
            ],
            rational_images: vec![
                img("two-pixel(1/3,3/4)", fixtures::two_pixel(ratio(1, 3), ratio(3, 4))),
                img("ramp-8/12", fixtures::image(fixtures::rational_ramp(8, 12), upper)),
                img("ramp-6/5", fixtures::image(fixtures::rational_ramp(6, 5), upper)),
            ],
            directions_2d: sample_directions(8, 2, &DirectionScheme::RationalGrid).expect("2d"),
            directions_3d: sample_directions(6, 3, &DirectionScheme::RationalGrid).expect("3d"),
        }
    }

    pub fn meshes(&self) -> Vec<(&'static str, &SimplicialComplex, &[Direction])> {
        vec![
            ("disk", &self.disk, &self.directions_2d),
            ("annulus", &self.annulus, &self.directions_2d),
            ("torus", &self.torus, &self.directions_3d),
            ("ball", &self.ball, &self.directions_3d),
        ]
    }

    pub fn images(&self) -> impl Iterator<Item = &(String, CubicalComplex, CellConstFunction)> {
        self.integer_images.iter().chain(&self.rational_images)
    }
}

type Oracle = Box<dyn Fn(&Rational) -> Rational + Send + Sync>;

/// A curve in `t` together with a from-scratch evaluator.
pub struct FixtureCurve {
    pub label: String,
    pub curve: StepCurve,
    pub oracle: Oracle,
}

fn dir_label(v: &Direction) -> String {
    let parts: Vec<String> = v.components().iter().map(fmt_rational).collect();
    format!("({})", parts.join(","))
}

fn up_to<T: Clone>(xs: &[T], n: usize) -> Vec<T> {
    xs.iter().take(n).cloned().collect()
}

/// Every ECT/LECT/SELECT/ERT curve in `t` generated from the fixture set.
pub fn fixture_curves(fx: &FixtureSet) -> Vec<FixtureCurve> {
    let mut out = Vec::new();
    for (name, mesh, dirs) in fx.meshes() {
        for v in dirs {
            let summaries = height_summaries(mesh, v).expect("dims");
            let one = CellConstFunction::indicator(mesh);
            let s2 = summaries.clone();
            out.push(FixtureCurve {
                label: format!("ect {name} v={}", dir_label(v)),
                curve: ect_shape(mesh, v).expect("dims"),
                oracle: Box::new(move |t| int(chi_preimage(&s2, &IntervalQuery::Leq(t.clone())).value)),
            });
            let s2 = summaries;
            let g = one.clone();
            out.push(FixtureCurve {
                label: format!("ert {name}·1 v={}", dir_label(v)),
                curve: ert(mesh, &one, v).expect("support"),
                oracle: Box::new(move |t| ert_value(&s2, &g, t)),
            });
        }
    }
    for (name, k, g) in fx.images() {
        for v in up_to(&fx.directions_2d, 4) {
            let summaries = height_summaries(k, &v).expect("dims");
            let (s2, g2) = (summaries.clone(), g.clone());
            out.push(FixtureCurve {
                label: format!("ert {name} v={}", dir_label(&v)),
                curve: ert(k, g, &v).expect("support"),
                oracle: Box::new(move |t| ert_value(&s2, &g2, t)),
            });
            let values = g.value_set();
            let levels: Vec<Rational> = up_to(&values, 3);
            for s in levels {
                let (s2, g2, lvl) = (summaries.clone(), g.clone(), s.clone());
                out.push(FixtureCurve {
                    label: format!("lect {name} s={} v={}", fmt_rational(&s), dir_label(&v)),
                    curve: lect(k, g, &v, &s).expect("dims"),
                    oracle: Box::new(move |t| int(lect_value(&s2, &g2, t, &lvl))),
                });
                // SELECT at s = 0 is the whole image: nonzero far right, fine for audits
                let (s2, g2, lvl) = (summaries.clone(), g.clone(), s.clone());
                out.push(FixtureCurve {
                    label: format!("select {name} s={} v={}", fmt_rational(&s), dir_label(&v)),
                    curve: select(k, g, &v, &s).expect("dims"),
                    oracle: Box::new(move |t| int(select_value(&s2, &g2, t, &lvl))),
                });
            }
        }
    }
    out
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Disk mesh: ECT is 0 then 1 with a single breakpoint at the minimal
/// vertex height, right continuous there and not left continuous.
pub fn sweep_disk_example(disk: &SimplicialComplex, directions: &[Direction]) -> Sweep {
    let mut sweep = Sweep::new("disk-ect-example");
    for v in directions {
        let tag = format!("disk v={}", dir_label(v));
        let mut report = AuditReport::new(&tag);
        let curve = ect_shape(disk, v).expect("dims");
        let min = disk.vertices().iter().map(|p| v.height(p)).min().expect("vertices");
        report.check(|| "breakpoints".into(), fmt_rational(&min), curve.breakpoints().iter().map(fmt_rational).collect::<Vec<_>>().join(" "));
        report.check(|| "value left of breakpoint".into(), fmt_rational(&int(0)), fmt_rational(curve.first_value()));
        report.check(|| "value from breakpoint on".into(), fmt_rational(&int(1)), fmt_rational(curve.last_value()));
        report.check(|| format!("left limit at {}", fmt_rational(&min)), fmt_rational(&int(0)), fmt_rational(curve.left_limit(&min)));
        report.check(|| format!("value at {}", fmt_rational(&min)), fmt_rational(&int(1)), fmt_rational(curve.eval(&min)));
        let summaries = height_summaries(disk, v).expect("dims");
        let oracle = |t: &Rational| int(chi_clipped_oracle(disk, v, t).expect("2d"));
        let probes = curve.probes();
        report.absorb(audit_right_continuity(&format!("{tag} right-continuity"), &curve, &probes, oracle));
        report.absorb(audit_vanishing_threshold(&format!("{tag} vanishing"), &summaries));
        // the same values stored left-continuous must be rejected
        let control = audit_right_continuity(&format!("{tag} control"), &curve.with_convention(Continuity::Left), &probes, oracle);
        report.check(|| "left-continuous control rejected".into(), true, !control.passed());
        sweep.push(report);
    }
    sweep
}

/// Per-cell rule against the clipping oracle on random small complexes,
/// plus right continuity of each random complex's ECT curve.
pub fn sweep_oracle(seed: u64, cases: usize) -> (Sweep, Sweep) {
    let mut rng = rng_for(seed, 1);
    let mut equiv = Sweep::new("oracle-equivalence");
    let mut rc = Sweep::new("oracle-ect-right-continuity");
    for case in 0..cases {
        let k = fixtures::random_complex(&mut rng, 50);
        let v = fixtures::random_direction(&mut rng, k.ambient_dim());
        let heights: Vec<Rational> = k.vertices().iter().map(|p| v.height(p)).collect();
        let pick = heights[rng.gen_range(0..heights.len())].clone();
        // half the time a vertex height, otherwise a nearby generic value
        let t = if rng.gen_bool(0.5) { pick } else { pick + ratio(rng.gen_range(-20..20), 40) };
        let tag = format!("case {case} dim={} cells={} v={} t={}", k.dim().unwrap_or(0), k.cell_count(), dir_label(&v), fmt_rational(&t));
        equiv.push(audit_oracle_equivalence(&tag, &k, &v, &[t]));
        let curve = ect_shape(&k, &v).expect("dims");
        let oracle = |t: &Rational| int(chi_clipped_oracle(&k, &v, t).expect("≤ 3d"));
        let mut report = audit_right_continuity(&tag, &curve, &curve.probes(), oracle);
        report.notes.clear();
        rc.push(report);
    }
    (equiv, rc)
}

/// Right continuity and vanishing for every fixture curve, plus left
/// continuity of SELECT in `s`.
pub fn sweep_fixture_continuity(fx: &FixtureSet) -> (Sweep, Sweep, Sweep) {
    let mut rc = Sweep::new("fixture-right-continuity");
    let mut vanish = Sweep::new("fixture-vanishing");
    for fc in fixture_curves(fx) {
        let mut report = audit_right_continuity(&fc.label, &fc.curve, &fc.curve.probes(), &fc.oracle);
        report.notes.clear();
        rc.push(report);
        vanish.push(audit_curve_vanishes(&fc.label, &fc.curve));
    }
    let mut left = Sweep::new("select-in-s-left-continuity");
    for (name, k, g) in fx.images() {
        let v = &fx.directions_2d[0];
        let summaries = height_summaries(k, v).expect("dims");
        for t in [int(-1), int(0), int(2)] {
            let curve = select_in_s(k, g, v, &t).expect("dims");
            let mut report = expect_convention(&format!("{name} t={}", fmt_rational(&t)), &curve, Continuity::Left);
            let oracle = |s: &Rational| int(select_value(&summaries, g, &t, s));
            report.absorb(audit_left_continuity(&report.tag.clone(), &curve, &curve.probes(), oracle));
            left.push(report);
        }
    }
    (rc, vanish, left)
}

/// `invert(smooth(e)) = e` for every fixture curve, at the default window and
/// at a wider one.
pub fn sweep_inversion(fx: &FixtureSet) -> Sweep {
    let mut sweep = Sweep::new("inversion-round-trip");
    for fc in fixture_curves(fx) {
        let w = crate::transforms::default_window(&fc.curve);
        let mut report = audit_inversion(&format!("{} W={}", fc.label, fmt_rational(&w)), &fc.curve, &w);
        let wide = &w * int(3) + half();
        report.absorb(audit_inversion(&format!("{} W={}", fc.label, fmt_rational(&wide)), &fc.curve, &wide));
        sweep.push(report);
    }
    sweep
}

/// ERT agrees with the constructible ECT of every integer-valued fixture.
pub fn sweep_ert_extends_ect(fx: &FixtureSet) -> Sweep {
    let mut sweep = Sweep::new("ert-extends-ect");
    for (name, k, g) in &fx.integer_images {
        for v in &fx.directions_2d {
            sweep.push(audit_ert_extends_ect(&format!("{name} v={}", dir_label(v)), k, g, v));
        }
    }
    for (name, mesh, dirs) in fx.meshes() {
        let one = CellConstFunction::indicator(mesh);
        for v in dirs {
            sweep.push(audit_ert_extends_ect(&format!("{name}·1 v={}", dir_label(v)), mesh, &one, v));
        }
    }
    sweep
}

/// Floor/ceiling approximants against ERT for rational-valued fixtures;
/// `units` counts (v, t) probes.
pub fn sweep_floor_ceiling(fx: &FixtureSet, seed: u64) -> Sweep {
    let mut sweep = Sweep::new("floor-ceiling");
    let mut rng = rng_for(seed, 2);
    let run = |sweep: &mut Sweep, name: &str, k: &dyn EmbeddedComplex, g: &CellConstFunction, dirs: &[Direction]| {
        for v in dirs {
            let curve = ert(k, g, v).expect("support");
            let probes = curve.probes();
            let n = probes.len();
            sweep.reports.push(audit_floor_ceiling(&format!("{name} q={} v={}", g.common_denominator(), dir_label(v)), k, g, v, &probes));
            sweep.units += n;
        }
    };
    for (name, k, g) in &fx.rational_images {
        run(&mut sweep, name, k, g, &up_to(&fx.directions_2d, 2));
    }
    let g = fixtures::random_cell_function(&mut rng, &fx.annulus, 7);
    run(&mut sweep, "annulus random/7", &fx.annulus, &g, &up_to(&fx.directions_2d, 2));
    sweep
}

/// Level-set continuity at every critical value and midpoint of five PL
/// functions on three meshes.
pub fn sweep_middle_continuity(fx: &FixtureSet) -> Sweep {
    let mut sweep = Sweep::new("middle-continuity");
    for named in fixtures::pl_functions(&fx.disk, &fx.annulus, &fx.torus) {
        let mesh = match named.mesh {
            "disk" => &fx.disk,
            "annulus" => &fx.annulus,
            _ => &fx.torus,
        };
        let summaries = pl_summaries(mesh, &named.f).expect("total function");
        let mut report = AuditReport::new(format!("{} on {}", named.name, named.mesh));
        for t in threshold_probes(&summaries) {
            report.absorb(audit_middle_continuity(&format!("t={}", fmt_rational(&t)), &summaries, &t));
        }
        sweep.push(report);
    }
    sweep
}

/// Randomized SELECT/LECT/ECT identity cases over meshes, images and random complexes.
pub fn sweep_select_lect(fx: &FixtureSet, seed: u64, cases: usize) -> Sweep {
    let mut sweep = Sweep::new("select-lect-identity");
    let mut rng = rng_for(seed, 3);
    for case in 0..cases {
        let q = rng.gen_range(1..=4i64);
        let run = |rng: &mut ChaCha8Rng, k: &dyn EmbeddedComplex, g: CellConstFunction, label: &str| {
            let v = fixtures::random_direction(rng, k.ambient_dim());
            let heights: Vec<Rational> = k.vertices().iter().map(|p| v.height(p)).collect();
            let t = heights[rng.gen_range(0..heights.len())].clone() + ratio(rng.gen_range(-1..=1), 2);
            let values = g.value_set();
            let s = match rng.gen_range(0..3) {
                0 => values[rng.gen_range(0..values.len())].clone(),
                1 => ratio(rng.gen_range(-8 * q..=8 * q), 2 * q),
                _ => int(rng.gen_range(10..20)),
            };
            let tag = format!("case {case} {label} v={} t={} s={}", dir_label(&v), fmt_rational(&t), fmt_rational(&s));
            audit_select_lect_identity(&tag, k, &g, &v, &t, &s)
        };
        let report = match case % 4 {
            0 => {
                let k = fixtures::random_complex(&mut rng, 40);
                let g = fixtures::random_cell_function(&mut rng, &k, q);
                run(&mut rng, &k, g, "random")
            }
            1 => {
                let g = fixtures::random_cell_function(&mut rng, &fx.disk, q);
                run(&mut rng, &fx.disk, g, "disk")
            }
            2 => {
                let (_, k, g) = &fx.integer_images[case / 4 % fx.integer_images.len()];
                run(&mut rng, k, g.clone(), "image")
            }
            _ => {
                let g = fixtures::random_cell_function(&mut rng, &fx.ball, q);
                run(&mut rng, &fx.ball, g, "ball")
            }
        };
        sweep.push(report);
    }
    sweep
}

/// Betti curves of the disk, annulus and 3-ball for `k ≤ 2`.
pub fn sweep_betti(fx: &FixtureSet) -> Sweep {
    let mut sweep = Sweep::new("betti-right-continuity");
    let axes2 = sample_directions(2, 2, &DirectionScheme::Axes).expect("2d");
    let axes3 = sample_directions(3, 3, &DirectionScheme::Axes).expect("3d");
    let diag2 = &fx.directions_2d[2..3];
    for (name, mesh, dirs) in [
        ("disk", &fx.disk, [&axes2[..], diag2].concat()),
        ("annulus", &fx.annulus, [&axes2[..], diag2].concat()),
        ("ball", &fx.ball, [&axes3[..], &fx.directions_3d[3..4]].concat()),
    ] {
        for v in &dirs {
            sweep.push(audit_betti_right_continuity_upto(&format!("{name} k≤2 v={}", dir_label(v)), mesh, v, 0..=2));
        }
    }
    sweep
}

pub fn sweep_axioms(seed: u64) -> Sweep {
    let mut sweep = Sweep::new("chi-axioms");
    sweep.push(audit_chi_axioms(seed));
    sweep
}

pub fn sweep_noncompact() -> Sweep {
    let mut sweep = Sweep::new("noncompact-counterexample");
    for d in [int(1), ratio(1, 2)] {
        sweep.push(audit_noncompact_counterexample(&d));
    }
    sweep
}

#[derive(Debug, Clone, Copy)]
enum Job {
    Disk,
    Oracle,
    Continuity,
    Inversion,
    ErtEct,
    FloorCeiling,
    Middle,
    SelectLect,
    Betti,
    Axioms,
    Noncompact,
}

const JOBS: [Job; 11] = [
    Job::Disk,
    Job::Oracle,
    Job::Continuity,
    Job::Inversion,
    Job::ErtEct,
    Job::FloorCeiling,
    Job::Middle,
    Job::SelectLect,
    Job::Betti,
    Job::Axioms,
    Job::Noncompact,
];

fn run_job(job: Job, fx: &FixtureSet, seed: u64) -> Vec<Sweep> {
    match job {
        Job::Disk => vec![sweep_disk_example(&fx.disk, &fx.directions_2d)],
        Job::Oracle => {
            let (a, b) = sweep_oracle(seed, 200);
            vec![a, b]
        }
        Job::Continuity => {
            let (a, b, c) = sweep_fixture_continuity(fx);
            vec![a, b, c]
        }
        Job::Inversion => vec![sweep_inversion(fx)],
        Job::ErtEct => vec![sweep_ert_extends_ect(fx)],
        Job::FloorCeiling => vec![sweep_floor_ceiling(fx, seed)],
        Job::Middle => vec![sweep_middle_continuity(fx)],
        Job::SelectLect => vec![sweep_select_lect(fx, seed, 120)],
        Job::Betti => vec![sweep_betti(fx)],
        Job::Axioms => vec![sweep_axioms(seed)],
        Job::Noncompact => vec![sweep_noncompact()],
    }
}

/// Runs every sweep, `workers` at a time; the outcome depends only on the seed.
pub fn run_battery(config: &BatteryConfig) -> Result<BatteryOutcome> {
    let fx = FixtureSet::builtin();
    let started = std::time::Instant::now();
    let groups = par_map(config.workers, &JOBS, |job| {
        let t0 = std::time::Instant::now();
        let out = run_job(*job, &fx, config.seed);
        log::debug!("{job:?} finished in {:?}", t0.elapsed());
        Ok(out)
    })?;
    log::info!("battery finished in {:?}", started.elapsed());
    Ok(BatteryOutcome { seed: config.seed, sweeps: groups.into_iter().flatten().collect() })
}
