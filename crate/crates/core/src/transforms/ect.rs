//! Euler characteristic curves: ECT of shapes and constructible functions, LECT and SELECT.

use num::One;

use super::curve::{Continuity, StepCurve};
use crate::error::{Error, Result};
use crate::euler::{cell_chi_contribution, chi_preimage_where, IntervalQuery};
use crate::geometry::rational::{fmt_rational, int, is_integer, Rational};
use crate::geometry::{height_summaries, CellConstFunction, CellSummary, Direction, EmbeddedComplex};

/// Right-continuous curve of `Σ_c weight(c) · χ(c ∩ {x·v ≤ t})` over the
/// cells accepted by `weight`. Each cell enters as a single jump at its
/// highest point, which is exactly where its `≤ t` contribution switches on.
pub(crate) fn weighted_sublevel_curve<F>(summaries: &[CellSummary], weight: F) -> StepCurve
where
    F: Fn(usize) -> Option<Rational>,
{
    StepCurve::from_jumps(summaries.iter().enumerate().filter_map(|(c, s)| {
        weight(c).map(|w| (s.hi.clone(), w * int(s.sign())))
    }))
}

/// `t ↦ χ(K ∩ {x·v ≤ t})`.
pub fn ect_shape<C: EmbeddedComplex + ?Sized>(complex: &C, v: &Direction) -> Result<StepCurve> {
    let summaries = height_summaries(complex, v)?;
    Ok(weighted_sublevel_curve(&summaries, |_| Some(Rational::one())))
}

fn check_len<C: EmbeddedComplex + ?Sized>(complex: &C, g: &CellConstFunction) -> Result<()> {
    if g.len() != complex.cell_count() {
        return Err(Error::CellValueCount { expected: complex.cell_count(), got: g.len() });
    }
    Ok(())
}

pub(crate) fn require_integer(g: &CellConstFunction) -> Result<()> {
    match g.values().iter().position(|v| !is_integer(v)) {
        Some(cell) => Err(Error::NotConstructible { cell, value: fmt_rational(g.value(cell)) }),
        None => Ok(()),
    }
}

/// `t ↦ ∫ g · 1{x·v ≤ t} dχ` for integer-valued `g`.
pub fn ect_constructible<C: EmbeddedComplex + ?Sized>(
    complex: &C,
    g: &CellConstFunction,
    v: &Direction,
) -> Result<StepCurve> {
    check_len(complex, g)?;
    require_integer(g)?;
    let summaries = height_summaries(complex, v)?;
    Ok(weighted_sublevel_curve(&summaries, |c| Some(g.value(c).clone())))
}

/// `t ↦ χ({g = s} ∩ {x·v ≤ t})`.
pub fn lect<C: EmbeddedComplex + ?Sized>(
    complex: &C,
    g: &CellConstFunction,
    v: &Direction,
    s: &Rational,
) -> Result<StepCurve> {
    check_len(complex, g)?;
    let summaries = height_summaries(complex, v)?;
    Ok(weighted_sublevel_curve(&summaries, |c| (g.value(c) == s).then(Rational::one)))
}

/// `t ↦ χ({g ≥ s} ∩ {x·v ≤ t})`.
pub fn select<C: EmbeddedComplex + ?Sized>(
    complex: &C,
    g: &CellConstFunction,
    v: &Direction,
    s: &Rational,
) -> Result<StepCurve> {
    check_len(complex, g)?;
    let summaries = height_summaries(complex, v)?;
    Ok(weighted_sublevel_curve(&summaries, |c| (g.value(c) >= s).then(Rational::one)))
}

/// Point value of LECT from scratch, via the per-cell rule.
pub fn lect_value(summaries: &[CellSummary], g: &CellConstFunction, t: &Rational, s: &Rational) -> i64 {
    chi_preimage_where(summaries, &IntervalQuery::Leq(t.clone()), |c| g.value(c) == s).value
}

/// Point value of SELECT from scratch, via the per-cell rule.
pub fn select_value(summaries: &[CellSummary], g: &CellConstFunction, t: &Rational, s: &Rational) -> i64 {
    chi_preimage_where(summaries, &IntervalQuery::Leq(t.clone()), |c| g.value(c) >= s).value
}

/// `s ↦ SELECT(g)(v, t, s)`, stored left-continuous.
pub fn select_in_s<C: EmbeddedComplex + ?Sized>(
    complex: &C,
    g: &CellConstFunction,
    v: &Direction,
    t: &Rational,
) -> Result<StepCurve> {
    check_len(complex, g)?;
    let summaries = height_summaries(complex, v)?;
    let q = IntervalQuery::Leq(t.clone());
    let chi: Vec<i64> = summaries.iter().map(|s| cell_chi_contribution(s, &q)).collect();
    Ok(StepCurve::from_sampler(Continuity::Left, g.value_set(), |s| {
        int((0..chi.len()).filter(|&c| g.value(c) >= s).map(|c| chi[c]).sum())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{chi_preimage, euler_integral};
    use crate::geometry::rational::ratio;
    use crate::geometry::{build_cubical_complex, Grid, LowerCellConvention, Point, SimplicialComplex};

    fn two_segments() -> SimplicialComplex {
        SimplicialComplex::build(
            (0..4).map(|i| Point::from_ints(&[[0, 1, 3, 4][i]])).collect(),
            [vec![0, 1], vec![2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn single_vertex_curve() {
        let k = SimplicialComplex::build(vec![Point::from_ints(&[0, 0])], [vec![0]]).unwrap();
        let c = ect_shape(&k, &Direction::from_ints(&[3, -1]).unwrap()).unwrap();
        assert_eq!(c, StepCurve::from_jumps([(int(0), int(1))]));
    }

    #[test]
    fn ect_matches_pointwise_chi() {
        let k = two_segments();
        let v = Direction::from_ints(&[1]).unwrap();
        let c = ect_shape(&k, &v).unwrap();
        let s = height_summaries(&k, &v).unwrap();
        for t in c.probes() {
            assert_eq!(c.eval(&t), &int(chi_preimage(&s, &IntervalQuery::Leq(t.clone())).value));
        }
        assert_eq!(c.values(), &[int(0), int(1), int(2)]);
    }

    #[test]
    fn constructible_staircase() {
        let k = two_segments();
        let left = |c: usize| k.simplex(c).iter().all(|&i| i < 2);
        let vals: Vec<Rational> = (0..k.cell_count()).map(|c| if left(c) { int(1) } else { int(3) }).collect();
        let g = CellConstFunction::with_auto_bound(&k, vals).unwrap();
        let v = Direction::from_ints(&[1]).unwrap();
        let curve = ect_constructible(&k, &g, &v).unwrap();
        assert_eq!(curve.values(), &[int(0), int(1), int(4)]);
        // oracle: the Euler integral of g restricted to the halfspace
        for t in curve.probes() {
            let s = height_summaries(&k, &v).unwrap();
            let restricted: Vec<Rational> = (0..k.cell_count())
                .map(|c| if s[c].hi <= t { g.value(c).clone() } else { int(0) })
                .collect();
            // only cells fully below t survive whole; cut cells contribute 0 here
            let h = CellConstFunction::with_auto_bound(&k, restricted).unwrap();
            assert_eq!(curve.eval(&t).to_integer(), euler_integral(&k, &h).unwrap());
        }
    }

    #[test]
    fn constructible_linearity_and_indicator() {
        let k = two_segments();
        let v = Direction::from_ints(&[-1]).unwrap();
        let one = CellConstFunction::indicator(&k);
        assert_eq!(ect_constructible(&k, &one, &v).unwrap(), ect_shape(&k, &v).unwrap());
        assert_eq!(
            ect_constructible(&k, &one.scaled(&int(2)), &v).unwrap(),
            ect_shape(&k, &v).unwrap().scaled(&int(2))
        );
        assert!(ect_constructible(&k, &one.scaled(&ratio(1, 2)), &v).is_err());
    }

    #[test]
    fn lect_select_on_indicator() {
        let k = two_segments();
        let v = Direction::from_ints(&[1]).unwrap();
        let one = CellConstFunction::indicator(&k);
        let ect = ect_shape(&k, &v).unwrap();
        assert_eq!(lect(&k, &one, &v, &int(1)).unwrap(), ect);
        assert_eq!(select(&k, &one, &v, &int(1)).unwrap(), ect);
        assert!(lect(&k, &one, &v, &int(2)).unwrap().is_zero());
        assert!(select(&k, &one, &v, &int(2)).unwrap().is_zero());
    }

    #[test]
    fn select_on_two_pixels() {
        let grid = Grid::from_rows(vec![vec![int(1), int(3)]]).unwrap();
        let (c, g) = build_cubical_complex(&grid, Point::from_ints(&[0, 0]), int(1), LowerCellConvention::Upper).unwrap();
        let v = Direction::from_ints(&[1, 0]).unwrap();
        let curve = select(&c, &g, &v, &int(3)).unwrap();
        assert_eq!(curve.last_value(), &int(1));
    }

    #[test]
    fn select_in_s_indicator() {
        let k = two_segments();
        let v = Direction::from_ints(&[1]).unwrap();
        let one = CellConstFunction::indicator(&k);
        let c = select_in_s(&k, &one, &v, &int(10)).unwrap();
        assert_eq!(c.convention(), Continuity::Left);
        assert_eq!(c.eval(&int(1)), &int(2));
        assert_eq!(c.eval(&ratio(1, 10)), &int(2));
        assert_eq!(c.eval(&ratio(11, 10)), &int(0));
        let zero = CellConstFunction::constant(&k, int(0));
        let z = select_in_s(&k, &zero, &v, &int(2)).unwrap();
        assert_eq!(z.eval(&int(0)), &int(1));
        assert_eq!(z.eval(&ratio(1, 2)), &int(0));
    }
}
