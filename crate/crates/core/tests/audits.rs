use euler_core::audit::fixtures::{annulus, disk};
use euler_core::audit::*;
use euler_core::euler::{chi_preimage, IntervalQuery};
use euler_core::geometry::rational::{int, ratio, Rational};
use euler_core::geometry::{
    height_summaries, pl_summaries, CellConstFunction, Direction, EmbeddedComplex, PLFunction, Point, SimplicialComplex,
};
use euler_core::transforms::{ect_shape, select_value, Continuity, StepCurve};

fn e1() -> Direction {
    Direction::from_ints(&[1, 0]).unwrap()
}

#[test]
fn disk_curve_right_but_not_left_continuous() {
    let k = disk(64);
    let curve = ect_shape(&k, &e1()).unwrap();
    let s = height_summaries(&k, &e1()).unwrap();
    let oracle = |t: &Rational| int(chi_preimage(&s, &IntervalQuery::Leq(t.clone())).value);
    let report = audit_right_continuity("disk", &curve, &curve.probes(), oracle);
    assert!(report.passed(), "{report:?}");
    assert_eq!(curve.eval(&int(-1)), &int(1));
    assert_eq!(curve.left_limit(&int(-1)), &int(0));
    assert_eq!(curve.left_discontinuities(), vec![int(-1)]);
    assert!(report.notes[0].contains("not left continuous at -1/1"));
}

#[test]
fn corrupted_curve_fails_with_witness() {
    let curve = StepCurve::from_jumps([(int(-1), int(1))]);
    // value at the breakpoint replaced by the left value
    let corrupted = curve.with_convention(Continuity::Left);
    let oracle = |t: &Rational| curve.eval(t).clone();
    let report = audit_right_continuity("corrupted", &corrupted, &curve.probes(), oracle);
    assert!(!report.passed());
    let w = &report.failures[0];
    assert!(w.inputs.contains("-1/1"), "{w:?}");
    assert_eq!((w.expected.as_str(), w.got.as_str()), ("1/1", "0/1"));
}

#[test]
fn missing_probe_is_reported() {
    let curve = StepCurve::from_jumps([(int(-1), int(1)), (int(2), int(-1))]);
    let report = audit_right_continuity("sparse probes", &curve, &[int(-1)], |t| curve.eval(t).clone());
    assert_eq!(report.failures.len(), 1);
    assert!(report.failures[0].inputs.contains("2/1"));
}

#[test]
fn vanishing_threshold_examples() {
    let s = height_summaries(&disk(64), &e1()).unwrap();
    let r = audit_vanishing_threshold("disk", &s);
    assert!(r.passed());
    assert_eq!(r.notes, vec!["disk: C = -2/1".to_string()]);
    assert!(audit_vanishing_threshold("empty", &[]).passed());
    let vertex = SimplicialComplex::build(vec![Point::from_ints(&[3, 4])], [vec![0]]).unwrap();
    let s = height_summaries(&vertex, &e1()).unwrap();
    let r = audit_vanishing_threshold("vertex", &s);
    assert!(r.passed());
    assert_eq!(r.notes, vec!["vertex: C = 2/1".to_string()]);
}

#[test]
fn middle_continuity_examples() {
    let k = disk(64);
    let s = height_summaries(&k, &e1()).unwrap();
    for t in [ratio(1, 3), int(0), ratio(-7, 10)] {
        assert!(audit_middle_continuity("disk", &s, &t).passed());
        assert_eq!(chi_preimage(&s, &IntervalQuery::Eq(t)).value, 1);
    }
    assert!(audit_middle_continuity("below", &s, &int(-5)).passed());
    let constant = pl_summaries(&k, &PLFunction::new(vec![int(2); k.vertices().len()])).unwrap();
    assert!(audit_middle_continuity("constant", &constant, &int(2)).passed());
    assert_eq!(chi_preimage(&constant, &IntervalQuery::Eq(int(2))).value, 1);
}

#[test]
fn select_lect_identity_examples() {
    let k = disk(32);
    let g = CellConstFunction::indicator(&k);
    let s = height_summaries(&k, &e1()).unwrap();
    assert_eq!(select_value(&s, &g, &int(5), &ratio(1, 2)), 1);
    assert_eq!(select_value(&s, &g.neg(), &int(5), &ratio(-3, 2)), 1);
    assert!(audit_select_lect_identity("indicator", &k, &g, &e1(), &int(5), &int(1)).passed());
    assert!(audit_select_lect_identity("outside range", &k, &g, &e1(), &int(5), &int(7)).passed());
    assert!(audit_select_lect_identity("below", &k, &g, &e1(), &int(-5), &int(1)).passed());
}

#[test]
fn chi_axioms_and_noncompact_example() {
    let r = audit_chi_axioms(3);
    assert!(r.passed(), "{r:?}");
    assert!(r.cases >= 50 + 7);
    for d in [int(1), ratio(1, 2)] {
        let r = audit_noncompact_counterexample(&d);
        assert!(r.passed(), "{r:?}");
        assert!(r.notes.iter().any(|n| n.contains("S_0 = ∅")));
    }
}

#[test]
fn betti_examples() {
    let v = Direction::from_ints(&[0, 1]).unwrap();
    assert!(audit_betti_right_continuity("annulus", &annulus(12), &v, 1).passed());
    assert!(audit_betti_right_continuity("disk", &disk(16), &v, 0).passed());
    let r = audit_betti_right_continuity("disk k=5", &disk(16), &v, 5);
    assert!(r.passed());
}

#[test]
fn battery_report_formats() {
    let mut r = AuditReport::new("x");
    r.check(|| "case".into(), 1, 2);
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(json, r#"{"tag":"x","cases":1,"failures":[{"inputs":"case","expected":"1","got":"2"}]}"#);
    assert!(r.summary_line().starts_with("FAIL x"));
}
