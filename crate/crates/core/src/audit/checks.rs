//! Individual audits. Every "sufficiently small δ" is realized as half the
//! smallest gap between adjacent critical values, where all the relevant
//! functions of δ are already constant.

use std::collections::BTreeSet;

use num::{BigInt, Signed, Zero};

use super::report::AuditReport;
use crate::euler::{chi_clipped_oracle, chi_disjoint_union, chi_preimage, chi_preimage_where, chi_product, ChiReport, IntervalQuery};
use crate::geometry::rational::{fmt_rational, half, int, Rational};
use crate::geometry::{
    height_summaries, CellConstFunction, CellSummary, CubicalComplex, Direction, EmbeddedComplex, Point,
    SimplicialComplex,
};
use crate::homology::{betti_curve, sublevel_betti, Filtration};
use crate::transforms::{
    ect_constructible, ert, ert_value, euler_integral_fc, lect_value, select_value, smooth, Continuity, StepCurve,
};

fn r(x: &Rational) -> String {
    fmt_rational(x)
}

/// Half the distance from `t` to the nearest other element of `points`, or 1.
fn half_gap_around(points: impl IntoIterator<Item = Rational>, t: &Rational) -> Rational {
    points
        .into_iter()
        .map(|p| (p - t).abs())
        .filter(|d| d.is_positive())
        .min()
        .map_or_else(|| int(1), |d| d * half())
}

fn thresholds(summaries: &[CellSummary]) -> BTreeSet<Rational> {
    summaries.iter().flat_map(|s| [s.lo.clone(), s.hi.clone()]).collect()
}

/// Stored value at each breakpoint equals the value just to its right, and
/// an independent re-evaluation agrees at every breakpoint, every
/// right-offset point, and every probe.
pub fn audit_right_continuity<F: Fn(&Rational) -> Rational>(
    tag: &str,
    curve: &StepCurve,
    probes: &[Rational],
    oracle: F,
) -> AuditReport {
    let mut report = AuditReport::new(tag);
    let bps = curve.breakpoints();
    for b in bps {
        report.check(|| format!("breakpoint {} present in probes", r(b)), true, probes.contains(b));
    }
    for (i, b) in bps.iter().enumerate() {
        let next = bps.get(i + 1).cloned().unwrap_or_else(|| b + int(2));
        let right = b + (next - b) * half();
        report.check(
            || format!("value at {} vs right neighbour {}", r(b), r(&right)),
            r(curve.eval(&right)),
            r(curve.eval(b)),
        );
        report.check(|| format!("recomputed at {}", r(b)), r(&oracle(b)), r(curve.eval(b)));
        report.check(|| format!("recomputed at {}", r(&right)), r(&oracle(&right)), r(curve.eval(&right)));
    }
    for p in probes {
        report.check(|| format!("recomputed at probe {}", r(p)), r(&oracle(p)), r(curve.eval(p)));
    }
    let jumps = curve.left_discontinuities();
    if !jumps.is_empty() {
        report.note(format!(
            "{tag}: not left continuous at {}",
            jumps.iter().map(r).collect::<Vec<_>>().join(", ")
        ));
    }
    report
}

/// Mirror of [`audit_right_continuity`] for curves in `s` stored left-continuous.
pub fn audit_left_continuity<F: Fn(&Rational) -> Rational>(
    tag: &str,
    curve: &StepCurve,
    probes: &[Rational],
    oracle: F,
) -> AuditReport {
    let mut report = AuditReport::new(tag);
    let bps = curve.breakpoints();
    for (i, b) in bps.iter().enumerate() {
        let prev = if i == 0 { b - int(2) } else { bps[i - 1].clone() };
        let left = b - (b - prev) * half();
        report.check(
            || format!("value at {} vs left neighbour {}", r(b), r(&left)),
            r(curve.eval(&left)),
            r(curve.eval(b)),
        );
        report.check(|| format!("recomputed at {}", r(b)), r(&oracle(b)), r(curve.eval(b)));
        report.check(|| format!("recomputed at {}", r(&left)), r(&oracle(&left)), r(curve.eval(&left)));
    }
    for p in probes {
        report.check(|| format!("recomputed at probe {}", r(p)), r(&oracle(p)), r(curve.eval(p)));
    }
    report
}

/// Exhibits `C = min threshold − 1` and checks `χ(S_t) = 0` at `C` and `C − 1`.
pub fn audit_vanishing_threshold(tag: &str, summaries: &[CellSummary]) -> AuditReport {
    let mut report = AuditReport::new(tag);
    let Some(min) = summaries.iter().map(|s| s.lo.clone()).min() else {
        report.note(format!("{tag}: empty complex, χ ≡ 0"));
        return report;
    };
    let c = min - int(1);
    for t in [c.clone(), &c - int(1)] {
        let chi = chi_preimage(summaries, &IntervalQuery::Leq(t.clone())).value;
        report.check(|| format!("χ(S_t) at t = {}", r(&t)), 0, chi);
    }
    report.note(format!("{tag}: C = {}", r(&c)));
    report
}

/// A curve in `t` is exactly zero left of its first breakpoint.
pub fn audit_curve_vanishes(tag: &str, curve: &StepCurve) -> AuditReport {
    let mut report = AuditReport::new(tag);
    report.check(|| "value on (-inf, b_1)".to_string(), r(&int(0)), r(curve.first_value()));
    if let Some(b) = curve.breakpoints().first() {
        let t = b - int(1);
        report.check(|| format!("value at {}", r(&t)), r(&int(0)), r(curve.eval(&t)));
    }
    report
}

/// `χ(f⁻¹[t − δ, t + δ]) = χ(f⁻¹(t))` at the first δ where the left side stabilizes.
pub fn audit_middle_continuity(tag: &str, summaries: &[CellSummary], t: &Rational) -> AuditReport {
    let mut report = AuditReport::new(tag);
    let delta = half_gap_around(thresholds(summaries), t);
    let band = IntervalQuery::band(t - &delta, t + &delta).expect("δ > 0");
    let lhs = chi_preimage(summaries, &band).value;
    let rhs = chi_preimage(summaries, &IntervalQuery::Eq(t.clone())).value;
    report.check(|| format!("t = {}, δ = {}", r(t), r(&delta)), rhs, lhs);
    report
}

/// `SELECT(g)(v,t,s−δ) + SELECT(−g)(v,t,−s−δ) = LECT(g)(v,t,s) + ECT(S)(v,t)`.
pub fn audit_select_lect_identity<C: EmbeddedComplex + ?Sized>(
    tag: &str,
    complex: &C,
    g: &CellConstFunction,
    v: &Direction,
    t: &Rational,
    s: &Rational,
) -> AuditReport {
    let mut report = AuditReport::new(tag);
    let summaries = match height_summaries(complex, v) {
        Ok(s) => s,
        Err(e) => {
            report.check(|| "height summaries".into(), "ok".to_string(), e.to_string());
            return report;
        }
    };
    let delta = half_gap_around(g.value_set(), s);
    let neg = g.neg();
    let lhs = select_value(&summaries, g, t, &(s - &delta)) + select_value(&summaries, &neg, t, &(-s - &delta));
    let rhs = lect_value(&summaries, g, t, s) + chi_preimage(&summaries, &IntervalQuery::Leq(t.clone())).value;
    report.check(|| format!("t = {}, s = {}, δ = {}", r(t), r(s), r(&delta)), rhs, lhs);
    report
}

fn segment(a: i64, b: i64) -> (SimplicialComplex, Vec<CellSummary>) {
    let k = SimplicialComplex::build(vec![Point::from_ints(&[a]), Point::from_ints(&[b])], [vec![0, 1]])
        .expect("segment");
    let s = height_summaries(&k, &Direction::from_ints(&[1]).expect("nonzero")).expect("1d");
    (k, s)
}

/// Additivity and the half-open cylinder condition on cell models, plus `χ(point) = 1`.
pub fn audit_chi_axioms(seed: u64) -> AuditReport {
    use rand::{Rng, SeedableRng};
    let mut report = AuditReport::new("chi-axioms");

    let point = SimplicialComplex::build(vec![Point::from_ints(&[0])], [vec![0]]).expect("point");
    report.check(|| "χ(point)".into(), 1, point.euler_characteristic());

    // (0,1] and (0,1) as preimages on the closed segment [0,1]
    let (_, seg) = segment(0, 1);
    let half_open = chi_preimage(&seg, &IntervalQuery::Gt(int(0)));
    let open = ChiReport {
        value: chi_preimage(&seg, &IntervalQuery::Lt(int(1))).value - chi_preimage(&seg, &IntervalQuery::Leq(int(0))).value,
        cells_counted: 1,
    };
    report.check(|| "χ((0,1])".into(), 0, half_open.value);
    report.check(|| "χ((0,1))".into(), -1, open.value);

    for n in 0..=2usize {
        // route 1: product rule
        let mut acc = half_open;
        for _ in 0..n {
            acc = ChiReport { value: chi_product(&acc, &open), cells_counted: acc.cells_counted };
        }
        report.check(|| format!("χ((0,1]×(0,1)^{n}) by products"), 0, acc.value);
        // route 2: explicit open cells of the unit cube: axis 0 open or at 1, others open
        let cube = CubicalComplex::new(Point::new(vec![int(0); n + 1]), vec![int(1); n + 1], vec![1; n + 1])
            .expect("cube");
        let chi: i64 = cube
            .cells()
            .iter()
            .filter(|c| c.coords[0] >= 1 && c.coords[1..].iter().all(|&x| x == 1))
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum();
        report.check(|| format!("χ((0,1]×(0,1)^{n}) by cells"), 0, chi);
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let shapes = [super::fixtures::annulus(12), super::fixtures::torus(6, 4), super::fixtures::ball3()];
    for case in 0..50 {
        let k = &shapes[case % shapes.len()];
        let v = super::fixtures::random_direction(&mut rng, k.ambient_dim());
        let s = height_summaries(k, &v).expect("dims");
        let t1 = crate::geometry::rational::ratio(rng.gen_range(-40..40), 8);
        let t2 = &t1 + crate::geometry::rational::ratio(rng.gen_range(0..40), 8);
        let below = chi_preimage(&s, &IntervalQuery::Lt(t1.clone()));
        let band = chi_preimage(&s, &IntervalQuery::band(t1.clone(), t2.clone()).expect("ordered"));
        let above = chi_preimage(&s, &IntervalQuery::Gt(t2.clone()));
        let union = ChiReport { value: chi_disjoint_union(&below, &band), cells_counted: 0 };
        let total = chi_disjoint_union(&union, &above);
        report.check(
            || format!("case {case}: χ(f<{0}) + χ({0}≤f≤{1}) + χ(f>{1})", r(&t1), r(&t2)),
            k.euler_characteristic(),
            total,
        );
    }
    report
}

/// `S = (0, ∞)` under the identity height, modelled by the open edge `(0, M)`
/// and the vertex `M`. Both `S_0` and `S_δ` have χ = 0, yet one is empty and
/// the other is not: the homotopy type jumps while χ does not. The compact
/// control `[0, 1]` is checked through its Betti curves.
pub fn audit_noncompact_counterexample(delta: &Rational) -> AuditReport {
    let mut report = AuditReport::new(format!("noncompact-counterexample(δ={})", r(delta)));
    let m = BigInt::from(2) + delta.ceil().to_integer().max(BigInt::zero());
    let m = i64::try_from(m).unwrap_or(i64::MAX);
    let (k, s) = segment(0, m);
    let origin = k.cell_id(&[0]).expect("vertex 0");
    let keep = |c: usize| c != origin;
    let chi_at = |t: &Rational| chi_preimage_where(&s, &IntervalQuery::Leq(t.clone()), keep).value;
    let nonempty = |t: &Rational| {
        (0..s.len()).any(|c| keep(c) && if s[c].constant { s[c].lo <= *t } else { s[c].lo < *t })
    };
    report.check(|| "χ(S_0)".into(), 0, chi_at(&int(0)));
    report.check(|| format!("χ(S_{})", r(delta)), 0, chi_at(delta));
    report.check(|| "S_0 empty".into(), false, nonempty(&int(0)));
    report.check(|| format!("S_{} non-empty", r(delta)), true, nonempty(delta));
    report.note(format!(
        "noncompact: χ(S_0) = χ(S_{}) = 0 but S_0 = ∅ while S_δ = (0, δ] ≠ ∅; no deformation retraction exists for any δ",
        r(delta)
    ));
    let (control, _) = segment(0, 1);
    let v = Direction::from_ints(&[1]).expect("nonzero");
    for k in 0..=1 {
        report.absorb(audit_betti_right_continuity(&format!("control-[0,1]-k{k}"), &control, &v, k));
    }
    report
}

/// Betti curve right-continuity plus the Euler–Poincaré cross-check
/// `Σ (−1)^j β_j = χ_clip` at every vertex height and midpoint.
pub fn audit_betti_right_continuity(tag: &str, complex: &SimplicialComplex, v: &Direction, k: usize) -> AuditReport {
    audit_betti_right_continuity_upto(tag, complex, v, k..=k)
}

/// [`audit_betti_right_continuity`] for several degrees at once, sharing the
/// sublevel homology and oracle evaluations.
pub fn audit_betti_right_continuity_upto(
    tag: &str,
    complex: &SimplicialComplex,
    v: &Direction,
    degrees: std::ops::RangeInclusive<usize>,
) -> AuditReport {
    let mut report = AuditReport::new(tag);
    let mut curves = Vec::new();
    for k in degrees.clone() {
        match betti_curve(complex, v, k) {
            Ok(c) => curves.push((k, c)),
            Err(e) => {
                report.check(|| format!("betti curve k={k}"), "ok".to_string(), e.to_string());
                return report;
            }
        }
    }
    let filt = Filtration::Height(v);
    let betti_at = |t: &Rational| sublevel_betti(complex, filt, t).expect("dims checked");
    let heights: BTreeSet<Rational> = complex.vertices().iter().map(|p| v.height(p)).collect();
    let heights: Vec<Rational> = heights.into_iter().collect();
    for (i, b) in heights.iter().enumerate() {
        let next = heights.get(i + 1).cloned().unwrap_or_else(|| b + int(2));
        let mid = (b + &next) * half();
        let (at_b, at_mid) = (betti_at(b), betti_at(&mid));
        for (k, curve) in &curves {
            let k = *k;
            report.check(|| format!("β_{k} at {} vs midpoint {}", r(b), r(&mid)), at_mid.get(k), at_b.get(k));
            report.check(|| format!("stored β_{k} at {}", r(b)), r(&int(at_b.get(k) as i64)), r(curve.eval(b)));
        }
        for (t, betti) in [(b, &at_b), (&mid, &at_mid)] {
            match chi_clipped_oracle(complex, v, t) {
                Ok(chi) => report.check(|| format!("Euler–Poincaré at {}", r(t)), chi, betti.euler_characteristic()),
                Err(e) => report.check(|| format!("oracle at {}", r(t)), "ok".to_string(), e.to_string()),
            }
        }
    }
    report
}

/// `invert(smooth(e, W)) = e` exactly.
pub fn audit_inversion(tag: &str, curve: &StepCurve, window: &Rational) -> AuditReport {
    let mut report = AuditReport::new(tag);
    match smooth::smooth(curve, window) {
        Ok(s) => {
            let zero = r(&int(0));
            report.check(|| "smoothed value at -W".into(), zero.clone(), r(&s.values()[0]));
            report.check(|| "smoothed value at W".into(), zero, r(s.values().last().expect("≥ 2 knots")));
            report.check(|| format!("round trip, W = {}", r(window)), curve.to_string(), smooth::invert_smooth(&s).to_string());
        }
        Err(e) => report.check(|| format!("smoothing, W = {}", r(window)), "ok".to_string(), e.to_string()),
    }
    report
}

fn probe_union(a: &StepCurve, b: &StepCurve) -> Vec<Rational> {
    let mut all: BTreeSet<Rational> = a.probes().into_iter().collect();
    all.extend(b.probes());
    all.into_iter().collect()
}

/// ERT equals the ECT of an integer-valued function at every breakpoint and midpoint.
pub fn audit_ert_extends_ect<C: EmbeddedComplex + ?Sized>(
    tag: &str,
    complex: &C,
    g: &CellConstFunction,
    v: &Direction,
) -> AuditReport {
    let mut report = AuditReport::new(tag);
    match (ert(complex, g, v), ect_constructible(complex, g, v)) {
        (Ok(e), Ok(c)) => {
            for t in probe_union(&e, &c) {
                report.check(|| format!("t = {}", r(&t)), r(c.eval(&t)), r(e.eval(&t)));
            }
        }
        (a, b) => report.check(
            || "curve construction".into(),
            "ok".to_string(),
            format!("{:?} / {:?}", a.err(), b.err()),
        ),
    }
    report
}

/// Floor/ceiling approximants equal ERT at every multiple of `q` and stay within
/// `Σ|χ_c| / 2n` of it for every `n ≤ 8q`.
pub fn audit_floor_ceiling<C: EmbeddedComplex + ?Sized>(
    tag: &str,
    complex: &C,
    g: &CellConstFunction,
    v: &Direction,
    probes: &[Rational],
) -> AuditReport {
    let mut report = AuditReport::new(tag);
    let q: u64 = g.common_denominator().try_into().unwrap_or(u64::MAX);
    let summaries = height_summaries(complex, v).expect("matching dimensions");
    for t in probes {
        let exact = ert_value(&summaries, g, t);
        let mass: i64 = summaries
            .iter()
            .map(|s| crate::euler::cell_chi_contribution(s, &IntervalQuery::Leq(t.clone())).abs())
            .sum();
        for n in 1..=8 * q {
            let approx = euler_integral_fc(complex, g, v, t, n).expect("n ≥ 1");
            if n % q == 0 {
                report.check(|| format!("t = {}, n = {n}", r(t)), r(&exact), r(&approx));
            }
            let bound = crate::geometry::rational::ratio(mass, 2 * n as i64);
            report.check(
                || format!("t = {}, n = {n}: |error| ≤ {}", r(t), r(&bound)),
                true,
                (approx - &exact).abs() <= bound,
            );
        }
    }
    report
}

/// Per-cell rule against the clipping oracle at the given thresholds.
pub fn audit_oracle_equivalence(
    tag: &str,
    complex: &SimplicialComplex,
    v: &Direction,
    probes: &[Rational],
) -> AuditReport {
    let mut report = AuditReport::new(tag);
    let summaries = height_summaries(complex, v).expect("matching dimensions");
    for t in probes {
        let rule = chi_preimage(&summaries, &IntervalQuery::Leq(t.clone())).value;
        match chi_clipped_oracle(complex, v, t) {
            Ok(chi) => report.check(|| format!("t = {}", r(t)), chi, rule),
            Err(e) => report.check(|| format!("oracle at {}", r(t)), "ok".to_string(), e.to_string()),
        }
    }
    report
}

/// Breakpoints, midpoints, and one threshold beyond each end of a height profile.
pub fn threshold_probes(summaries: &[CellSummary]) -> Vec<Rational> {
    let th: Vec<Rational> = thresholds(summaries).into_iter().collect();
    let mut out = Vec::new();
    if let (Some(first), Some(last)) = (th.first(), th.last()) {
        out.push(first - int(1));
        for w in th.windows(2) {
            out.push(w[0].clone());
            out.push((&w[0] + &w[1]) * half());
        }
        out.push(last.clone());
        out.push(last + int(1));
    }
    out
}

/// Whether a curve uses the storage convention its variable requires.
pub fn expect_convention(tag: &str, curve: &StepCurve, convention: Continuity) -> AuditReport {
    let mut report = AuditReport::new(tag);
    report.check(|| "storage convention".into(), format!("{convention:?}"), format!("{:?}", curve.convention()));
    report
}
