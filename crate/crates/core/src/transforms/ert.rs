//! Euler–Radon transform of cell-wise constant real functions.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, Signed, Zero};

use super::curve::{Continuity, StepCurve};
use crate::error::{Error, Result};
use crate::euler::{cell_chi_contribution, IntervalQuery};
use crate::geometry::rational::{ceil, floor, half, int, Rational};
use crate::geometry::{height_summaries, CellConstFunction, CellSummary, Direction, EmbeddedComplex};

/// `Σ χ(c ∩ {x·v ≤ t})` grouped by the value of `g` on `c`.
fn chi_by_value(summaries: &[CellSummary], g: &CellConstFunction, t: &Rational) -> BTreeMap<Rational, i64> {
    let q = IntervalQuery::Leq(t.clone());
    let mut out = BTreeMap::new();
    for (c, s) in summaries.iter().enumerate() {
        let chi = cell_chi_contribution(s, &q);
        if chi != 0 {
            *out.entry(g.value(c).clone()).or_insert(0) += chi;
        }
    }
    out
}

/// The integrand `G(v, t, s)`:
/// `SELECT(g)(s) − SELECT(−g)(s) + ½ (LECT(−g)(s) − LECT(g)(s))`,
/// evaluated from per-value Euler characteristics at a fixed `t`.
fn integrand(chi: &BTreeMap<Rational, i64>, s: &Rational) -> Rational {
    let neg_s = -s;
    let mut select_pos = 0i64;
    let mut select_neg = 0i64;
    for (value, &w) in chi {
        if value >= s {
            select_pos += w;
        }
        // −g ≥ s  ⇔  g ≤ −s
        if *value <= neg_s {
            select_neg += w;
        }
    }
    let lect_pos = chi.get(s).copied().unwrap_or(0);
    let lect_neg = chi.get(&neg_s).copied().unwrap_or(0);
    int(select_pos - select_neg) + half() * int(lect_neg - lect_pos)
}

/// `G(v, t, s)` at a single point, for audits.
pub fn ert_integrand(summaries: &[CellSummary], g: &CellConstFunction, t: &Rational, s: &Rational) -> Rational {
    integrand(&chi_by_value(summaries, g, t), s)
}

/// `ERT(g)(v, t) = ∫_0^∞ G(v, t, s) ds`. For fixed `t`, `G` is a step
/// function of `s` whose breakpoints are the absolute values of `g`, so the
/// integral is a finite sum of interval lengths times midpoint values.
pub fn ert_value(summaries: &[CellSummary], g: &CellConstFunction, t: &Rational) -> Rational {
    let chi = chi_by_value(summaries, g, t);
    let mut cuts: BTreeSet<Rational> = chi.keys().map(|v| v.abs()).collect();
    cuts.insert(Rational::zero());
    let cuts: Vec<Rational> = cuts.into_iter().collect();
    cuts.windows(2)
        .map(|w| {
            let mid = (&w[0] + &w[1]) * half();
            integrand(&chi, &mid) * (&w[1] - &w[0])
        })
        .sum()
}

/// `t ↦ ERT(g)(v, t)`.
pub fn ert<C: EmbeddedComplex + ?Sized>(complex: &C, g: &CellConstFunction, v: &Direction) -> Result<StepCurve> {
    g.check_support(complex)?;
    let summaries = height_summaries(complex, v)?;
    let candidates: Vec<Rational> = summaries
        .iter()
        .enumerate()
        .filter(|(c, _)| !g.value(*c).is_zero())
        .map(|(_, s)| s.hi.clone())
        .collect();
    Ok(StepCurve::from_sampler(Continuity::Right, candidates, |t| ert_value(&summaries, g, t)))
}

/// The `n`-th floor/ceiling approximant
/// `(1/2n) ∫ ⌊n h⌋ + ⌈n h⌉ dχ` with `h = g · 1{x·v ≤ t}`.
pub fn euler_integral_fc<C: EmbeddedComplex + ?Sized>(
    complex: &C,
    g: &CellConstFunction,
    v: &Direction,
    t: &Rational,
    n: u64,
) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Invalid("approximation order n must be ≥ 1".into()));
    }
    if g.len() != complex.cell_count() {
        return Err(Error::CellValueCount { expected: complex.cell_count(), got: g.len() });
    }
    let summaries = height_summaries(complex, v)?;
    let scale = Rational::from_integer(BigInt::from(n));
    // per integer-valued function: group cells by level, then Σ m · χ(level ∩ halfspace)
    let integrate = |round: &dyn Fn(&Rational) -> BigInt| -> BigInt {
        let q = IntervalQuery::Leq(t.clone());
        let mut levels: BTreeMap<BigInt, i64> = BTreeMap::new();
        for (c, s) in summaries.iter().enumerate() {
            let chi = cell_chi_contribution(s, &q);
            if chi != 0 {
                *levels.entry(round(&(g.value(c) * &scale))).or_insert(0) += chi;
            }
        }
        levels.into_iter().map(|(m, chi)| m * BigInt::from(chi)).sum()
    };
    let total = integrate(&floor) + integrate(&ceil);
    Ok(Rational::from_integer(total) / (int(2) * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::ratio;
    use crate::geometry::{Point, SimplicialComplex};
    use crate::transforms::ect::{ect_constructible, ect_shape};

    fn segment() -> SimplicialComplex {
        SimplicialComplex::build(vec![Point::from_ints(&[0]), Point::from_ints(&[1])], [vec![0, 1]]).unwrap()
    }

    #[test]
    fn zero_function() {
        let k = segment();
        let g = CellConstFunction::constant(&k, int(0));
        assert!(ert(&k, &g, &Direction::from_ints(&[1]).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn integer_valued_matches_ect() {
        let k = segment();
        let v = Direction::from_ints(&[1]).unwrap();
        let edge = k.cell_id(&[0, 1]).unwrap();
        let vals: Vec<Rational> = (0..3).map(|c| if c == edge { int(-2) } else { int(3) }).collect();
        let g = CellConstFunction::with_auto_bound(&k, vals).unwrap();
        assert_eq!(ert(&k, &g, &v).unwrap(), ect_constructible(&k, &g, &v).unwrap());
    }

    #[test]
    fn half_indicator() {
        let k = segment();
        let v = Direction::from_ints(&[1]).unwrap();
        let g = CellConstFunction::constant(&k, ratio(1, 2));
        assert_eq!(ert(&k, &g, &v).unwrap(), ect_shape(&k, &v).unwrap().scaled(&ratio(1, 2)));
    }

    #[test]
    fn floor_ceiling_examples() {
        let k = segment();
        let v = Direction::from_ints(&[1]).unwrap();
        let g = CellConstFunction::constant(&k, ratio(1, 2));
        let big = int(5);
        // n = 2: floor = ceil = 1 on every cell, χ(segment) = 1 → (1 + 1)/4
        assert_eq!(euler_integral_fc(&k, &g, &v, &big, 2).unwrap(), ratio(1, 2));
        // n = 1: floor 0, ceil 1 → (0 + 1)/2
        assert_eq!(euler_integral_fc(&k, &g, &v, &big, 1).unwrap(), ratio(1, 2));
        let g3 = CellConstFunction::constant(&k, int(3));
        assert_eq!(euler_integral_fc(&k, &g3, &v, &ratio(1, 2), 7).unwrap(), int(3));
        assert_eq!(euler_integral_fc(&k, &g3, &v, &int(-1), 7).unwrap(), int(0));
        assert_eq!(euler_integral_fc(&k, &g3, &v, &big, 7).unwrap(), int(3));
        assert!(euler_integral_fc(&k, &g3, &v, &big, 0).is_err());
    }

    #[test]
    fn support_violation() {
        let k = segment();
        let g = CellConstFunction::new(&k, vec![int(1); 3], int(2)).unwrap();
        let bad = CellConstFunction::new(&k, vec![int(1); 3], int(1));
        assert!(bad.is_err());
        assert!(ert(&k, &g, &Direction::from_ints(&[1]).unwrap()).is_ok());
    }

    #[test]
    fn lect_terms_vanish_off_levels() {
        let k = segment();
        let v = Direction::from_ints(&[1]).unwrap();
        let g = CellConstFunction::constant(&k, ratio(1, 3));
        let s = height_summaries(&k, &v).unwrap();
        // at s = 1/3 the level-set term is live: 1 - 0 + ½(0 - 1)
        assert_eq!(ert_integrand(&s, &g, &int(2), &ratio(1, 3)), ratio(1, 2));
        assert_eq!(ert_integrand(&s, &g, &int(2), &ratio(1, 4)), int(1));
    }
}
