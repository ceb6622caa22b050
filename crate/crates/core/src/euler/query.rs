//! Euler characteristics of preimage sets, one closed-form rule per open cell.

use std::collections::BTreeMap;

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::geometry::rational::{fmt_rational, is_integer, Rational};
use crate::geometry::{CellConstFunction, CellSummary, EmbeddedComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalQuery {
    /// `{f ≤ t}`
    Leq(Rational),
    /// `{f < t}`
    Lt(Rational),
    /// `{f = s}`
    Eq(Rational),
    /// `{f ≥ s}`
    Geq(Rational),
    /// `{f > s}`
    Gt(Rational),
    /// `{t1 ≤ f ≤ t2}`
    Band(Rational, Rational),
}

impl IntervalQuery {
    pub fn band(t1: Rational, t2: Rational) -> Result<Self> {
        if t1 > t2 {
            return Err(Error::Query(format!("band [{}, {}] is reversed", fmt_rational(&t1), fmt_rational(&t2))));
        }
        Ok(IntervalQuery::Band(t1, t2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiReport {
    pub value: i64,
    /// Cells with a nonzero contribution.
    pub cells_counted: usize,
}

fn leq(c: &CellSummary, t: &Rational) -> i64 {
    if *t >= c.hi {
        c.sign()
    } else {
        0
    }
}

fn lt(c: &CellSummary, t: &Rational) -> i64 {
    if *t > c.lo {
        c.sign()
    } else {
        0
    }
}

/// `χ(c ∩ q)` for one open convex cell `c`.
///
/// A cell cut transversally by a closed halfspace contributes nothing: the
/// open part and the new boundary face cancel. Everything else is built
/// from the `≤` and `<` primitives.
pub fn cell_chi_contribution(summary: &CellSummary, q: &IntervalQuery) -> i64 {
    match q {
        IntervalQuery::Leq(t) => leq(summary, t),
        IntervalQuery::Lt(t) => lt(summary, t),
        IntervalQuery::Eq(s) => leq(summary, s) - lt(summary, s),
        IntervalQuery::Geq(s) => summary.sign() - lt(summary, s),
        IntervalQuery::Gt(s) => summary.sign() - leq(summary, s),
        IntervalQuery::Band(t1, t2) => leq(summary, t2) - lt(summary, t1),
    }
}

pub fn chi_preimage(summaries: &[CellSummary], q: &IntervalQuery) -> ChiReport {
    chi_preimage_where(summaries, q, |_| true)
}

/// Same as [`chi_preimage`] restricted to the cells accepted by `keep`.
pub fn chi_preimage_where<F: Fn(usize) -> bool>(summaries: &[CellSummary], q: &IntervalQuery, keep: F) -> ChiReport {
    let mut report = ChiReport { value: 0, cells_counted: 0 };
    for (id, s) in summaries.iter().enumerate() {
        if !keep(id) {
            continue;
        }
        let c = cell_chi_contribution(s, q);
        if c != 0 {
            report.value += c;
            report.cells_counted += 1;
        }
    }
    report
}

/// `Σ_n n · χ(g⁻¹(n))` for an integer-valued cell-wise constant `g`.
pub fn euler_integral<C: EmbeddedComplex + ?Sized>(complex: &C, g: &CellConstFunction) -> Result<BigInt> {
    let mut chi_by_level: BTreeMap<BigInt, i64> = BTreeMap::new();
    for cell in 0..complex.cell_count() {
        let v = g.value(cell);
        if !is_integer(v) {
            return Err(Error::NotConstructible { cell, value: fmt_rational(v) });
        }
        let sign = if complex.cell_dim(cell) % 2 == 0 { 1 } else { -1 };
        *chi_by_level.entry(v.to_integer()).or_insert(0) += sign;
    }
    Ok(chi_by_level
        .into_iter()
        .fold(BigInt::zero(), |acc, (n, chi)| acc + n * BigInt::from(chi)))
}

pub fn chi_disjoint_union(a: &ChiReport, b: &ChiReport) -> i64 {
    a.value + b.value
}

pub fn chi_product(a: &ChiReport, b: &ChiReport) -> i64 {
    a.value * b.value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, ratio};
    use crate::geometry::{Point, SimplicialComplex};

    fn cell(dim: usize, lo: Rational, hi: Rational) -> CellSummary {
        let constant = lo == hi;
        CellSummary { dim, lo, hi, constant }
    }

    #[test]
    fn contribution_examples() {
        assert_eq!(cell_chi_contribution(&cell(1, int(0), int(1)), &IntervalQuery::Leq(ratio(1, 2))), 0);
        assert_eq!(cell_chi_contribution(&cell(0, int(0), int(0)), &IntervalQuery::Leq(int(0))), 1);
        let c = ratio(7, 3);
        assert_eq!(cell_chi_contribution(&cell(1, c.clone(), c.clone()), &IntervalQuery::Leq(c)), -1);
    }

    /// Band of a triangle cut by two parallel lines, triangulated by hand:
    /// the strip {1/4 ≤ x+y ≤ 1/2} inside the open triangle (0,0),(1,0),(0,1)
    /// under f = x + y. The strip is a trapezoid with its two slanted sides on
    /// the (excluded) triangle boundary: the open quadrilateral plus the two
    /// open parallel sides, i.e. 2 triangles, 1 diagonal, 2 open sides,
    /// no vertices: 2 - 1 - 2 = -1.
    #[test]
    fn band_inside_triangle() {
        let brute = 2 - 1 - 2;
        let q = IntervalQuery::band(ratio(1, 4), ratio(1, 2)).unwrap();
        assert_eq!(cell_chi_contribution(&cell(2, int(0), int(1)), &q), brute);
        assert!(IntervalQuery::band(int(1), int(0)).is_err());
    }

    #[test]
    fn additivity_on_random_cells() {
        let cells = [
            cell(0, int(2), int(2)),
            cell(1, int(0), int(3)),
            cell(2, int(-1), int(1)),
            cell(1, int(1), int(1)),
        ];
        for s in -3..5 {
            for c in &cells {
                let s = ratio(s, 2);
                let sum = cell_chi_contribution(c, &IntervalQuery::Eq(s.clone()))
                    + cell_chi_contribution(c, &IntervalQuery::Lt(s.clone()))
                    + cell_chi_contribution(c, &IntervalQuery::Gt(s.clone()));
                assert_eq!(sum, c.sign());
                let geq = cell_chi_contribution(c, &IntervalQuery::Geq(s.clone()));
                let gt = cell_chi_contribution(c, &IntervalQuery::Gt(s.clone()));
                let eq = cell_chi_contribution(c, &IntervalQuery::Eq(s));
                assert_eq!(geq, gt + eq);
            }
        }
    }

    fn segment() -> SimplicialComplex {
        SimplicialComplex::build(vec![Point::from_ints(&[0]), Point::from_ints(&[1])], [vec![0, 1]]).unwrap()
    }

    #[test]
    fn euler_integral_examples() {
        let k = segment();
        let g = CellConstFunction::constant(&k, int(2));
        assert_eq!(euler_integral(&k, &g).unwrap(), BigInt::from(2));
        // only the open edge carries 1
        let edge = k.cell_id(&[0, 1]).unwrap();
        let vals: Vec<Rational> = (0..3).map(|c| if c == edge { int(1) } else { int(0) }).collect();
        let g = CellConstFunction::with_auto_bound(&k, vals).unwrap();
        assert_eq!(euler_integral(&k, &g).unwrap(), BigInt::from(-1));
        let half = CellConstFunction::constant(&k, ratio(1, 2));
        assert!(matches!(euler_integral(&k, &half), Err(Error::NotConstructible { .. })));
    }

    #[test]
    fn euler_integral_segment_plus_isolated_vertex() {
        let k = SimplicialComplex::build(
            vec![Point::from_ints(&[0]), Point::from_ints(&[1]), Point::from_ints(&[3])],
            [vec![0, 1], vec![2]],
        )
        .unwrap();
        let iso = k.cell_id(&[2]).unwrap();
        let vals: Vec<Rational> = (0..k.cell_count()).map(|c| if c == iso { int(1) } else { int(2) }).collect();
        let g = CellConstFunction::with_auto_bound(&k, vals).unwrap();
        let total = euler_integral(&k, &g).unwrap();
        // additivity: 2·χ(segment) + 1·χ(point)
        assert_eq!(total, BigInt::from(2 * 1 + 1));
    }

    #[test]
    fn union_and_product() {
        let one = ChiReport { value: 1, cells_counted: 1 };
        assert_eq!(chi_disjoint_union(&one, &one), 2);
        assert_eq!(chi_product(&one, &one), 1);
        let half_open = ChiReport { value: 0, cells_counted: 1 };
        assert_eq!(chi_product(&half_open, &ChiReport { value: 5, cells_counted: 3 }), 0);
        let open = ChiReport { value: -1, cells_counted: 1 };
        assert_eq!(chi_product(&open, &open), 1);
    }
}
