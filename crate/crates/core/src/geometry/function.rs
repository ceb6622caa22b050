//! Functions on complexes: PL functions given by vertex values, cell-wise
//! constant functions (images, constructible functions), and the per-cell
//! min/max summaries every Euler characteristic rule consumes.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::complex::{CellId, CubicalComplex, Direction, EmbeddedComplex, Point, SimplicialComplex};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Range of a linear or PL function over one open cell. On an open convex
/// cell the image is `{lo}` when constant and the open interval `(lo, hi)` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSummary {
    pub dim: usize,
    pub lo: Rational,
    pub hi: Rational,
    pub constant: bool,
}

impl CellSummary {
    pub fn from_values<'a, I: IntoIterator<Item = &'a Rational>>(dim: usize, values: I) -> Self {
        let mut it = values.into_iter();
        let first = it.next().expect("cell closure has at least one vertex").clone();
        let (lo, hi) = it.fold((first.clone(), first), |(lo, hi), v| {
            (if v < &lo { v.clone() } else { lo }, if v > &hi { v.clone() } else { hi })
        });
        let constant = lo == hi;
        CellSummary { dim, lo, hi, constant }
    }

    pub fn sign(&self) -> i64 {
        if self.dim % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Summaries of the height function `x ↦ x · v`.
pub fn height_summaries<C: EmbeddedComplex + ?Sized>(complex: &C, v: &Direction) -> Result<Vec<CellSummary>> {
    if v.dim() != complex.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: complex.ambient_dim(), got: v.dim() });
    }
    let heights: Vec<Rational> = complex.vertices().iter().map(|p| v.height(p)).collect();
    Ok(summaries_from_vertex_values(complex, &heights))
}

pub(crate) fn summaries_from_vertex_values<C: EmbeddedComplex + ?Sized>(
    complex: &C,
    values: &[Rational],
) -> Vec<CellSummary> {
    (0..complex.cell_count())
        .map(|c| {
            CellSummary::from_values(
                complex.cell_dim(c),
                complex.closure_vertex_ids(c).iter().map(|&i| &values[i]),
            )
        })
        .collect()
}

/// A function given by its vertex values, affine on each closed simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    vertex_values: Vec<Option<Rational>>,
}

impl PLFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        PLFunction { vertex_values: values.into_iter().map(Some).collect() }
    }

    /// Partially specified values; missing entries are reported by [`pl_summaries`].
    pub fn from_partial(values: Vec<Option<Rational>>) -> Self {
        PLFunction { vertex_values: values }
    }

    pub fn from_fn<F: Fn(&Point) -> Rational>(complex: &SimplicialComplex, f: F) -> Self {
        Self::new(complex.vertices().iter().map(f).collect())
    }

    pub fn height(complex: &SimplicialComplex, v: &Direction) -> Self {
        Self::from_fn(complex, |p| v.height(p))
    }

    pub fn value(&self, vertex: usize) -> Option<&Rational> {
        self.vertex_values.get(vertex).and_then(Option::as_ref)
    }

    /// Values of every vertex used by some simplex.
    pub fn resolved(&self, complex: &SimplicialComplex) -> Result<Vec<Rational>> {
        let mut used = vec![false; complex.vertices().len()];
        for s in complex.simplices() {
            for &v in s {
                used[v] = true;
            }
        }
        (0..complex.vertices().len())
            .map(|i| match self.value(i) {
                Some(x) => Ok(x.clone()),
                None if !used[i] => Ok(Rational::zero()),
                None => Err(Error::MissingVertexValue(i)),
            })
            .collect()
    }
}

pub fn pl_summaries(complex: &SimplicialComplex, f: &PLFunction) -> Result<Vec<CellSummary>> {
    let values = f.resolved(complex)?;
    Ok(summaries_from_vertex_values(complex, &values))
}

/// A function constant on each open cell, with a radius `W` such that every
/// cell carrying a nonzero value lies strictly inside the ball `|x| < W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellConstFunction {
    cell_values: Vec<Rational>,
    support_bound: Rational,
}

impl CellConstFunction {
    pub fn new<C: EmbeddedComplex + ?Sized>(complex: &C, values: Vec<Rational>, support_bound: Rational) -> Result<Self> {
        if values.len() != complex.cell_count() {
            return Err(Error::CellValueCount { expected: complex.cell_count(), got: values.len() });
        }
        let g = CellConstFunction { cell_values: values, support_bound };
        g.check_support(complex)?;
        Ok(g)
    }

    /// Uses the smallest integer radius that strictly contains the support.
    pub fn with_auto_bound<C: EmbeddedComplex + ?Sized>(complex: &C, values: Vec<Rational>) -> Result<Self> {
        if values.len() != complex.cell_count() {
            return Err(Error::CellValueCount { expected: complex.cell_count(), got: values.len() });
        }
        let max_sq = support_max_norm_sq(complex, &values);
        let w = Rational::from_integer(rational::int_bound_above_sqrt(&max_sq));
        Self::new(complex, values, w)
    }

    pub fn indicator<C: EmbeddedComplex + ?Sized>(complex: &C) -> Self {
        Self::with_auto_bound(complex, vec![Rational::one(); complex.cell_count()])
            .expect("indicator has one value per cell")
    }

    pub fn constant<C: EmbeddedComplex + ?Sized>(complex: &C, c: Rational) -> Self {
        Self::with_auto_bound(complex, vec![c; complex.cell_count()]).expect("one value per cell")
    }

    pub fn values(&self) -> &[Rational] {
        &self.cell_values
    }

    pub fn value(&self, cell: CellId) -> &Rational {
        &self.cell_values[cell]
    }

    pub fn support_bound(&self) -> &Rational {
        &self.support_bound
    }

    pub fn len(&self) -> usize {
        self.cell_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cell_values.is_empty()
    }

    /// Sorted distinct values.
    pub fn value_set(&self) -> Vec<Rational> {
        self.cell_values.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn is_integer_valued(&self) -> bool {
        self.cell_values.iter().all(rational::is_integer)
    }

    /// Least common denominator of the values.
    pub fn common_denominator(&self) -> num::BigInt {
        use num::Integer;
        self.cell_values.iter().fold(num::BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        CellConstFunction {
            cell_values: self.cell_values.iter().map(|v| v * c).collect(),
            support_bound: self.support_bound.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        CellConstFunction {
            cell_values: self.cell_values.iter().map(|v| -v).collect(),
            support_bound: self.support_bound.clone(),
        }
    }

    pub fn check_support<C: EmbeddedComplex + ?Sized>(&self, complex: &C) -> Result<()> {
        if self.cell_values.len() != complex.cell_count() {
            return Err(Error::CellValueCount { expected: complex.cell_count(), got: self.cell_values.len() });
        }
        if !self.support_bound.is_positive() {
            return Err(Error::Support("support bound must be positive".into()));
        }
        let max_sq = support_max_norm_sq(complex, &self.cell_values);
        if max_sq >= &self.support_bound * &self.support_bound {
            return Err(Error::Support(format!(
                "nonzero cells reach |x|^2 = {} but W = {}",
                rational::fmt_rational(&max_sq),
                rational::fmt_rational(&self.support_bound)
            )));
        }
        Ok(())
    }
}

fn support_max_norm_sq<C: EmbeddedComplex + ?Sized>(complex: &C, values: &[Rational]) -> Rational {
    let norms: Vec<Rational> = complex.vertices().iter().map(Point::norm_sq).collect();
    (0..complex.cell_count())
        .filter(|&c| !values[c].is_zero())
        .flat_map(|c| complex.closure_vertex_ids(c).iter().map(|&i| norms[i].clone()).collect::<Vec<_>>())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// How a lower-dimensional cell of an image inherits a value from the boxes around it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LowerCellConvention {
    /// Maximum over incident boxes.
    #[default]
    Upper,
    /// Minimum over incident boxes.
    Lower,
}

impl std::str::FromStr for LowerCellConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Self::Upper),
            "lower" => Ok(Self::Lower),
            other => Err(Error::Invalid(format!("unknown convention {other:?}"))),
        }
    }
}

/// Dense n-dimensional array of rationals, axis 0 varying fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub extents: Vec<usize>,
    pub values: Vec<Rational>,
}

impl Grid {
    pub fn new(extents: Vec<usize>, values: Vec<Rational>) -> Result<Self> {
        let n: usize = extents.iter().product();
        if extents.is_empty() || n == 0 {
            return Err(Error::GridShape("grid must be non-empty".into()));
        }
        if n != values.len() {
            return Err(Error::GridShape(format!("extents {extents:?} need {n} values, got {}", values.len())));
        }
        Ok(Grid { extents, values })
    }

    /// 2D grid from rows; row `r`, column `c` becomes box `(c, r)`.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::GridShape("rows have different lengths".into()));
        }
        let height = rows.len();
        Self::new(vec![width, height], rows.into_iter().flatten().collect())
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.values[super::complex::linear_index(idx, &self.extents)]
    }
}

/// Grid boxes carry the pixel/voxel values; lower cells follow `convention`.
pub fn build_cubical_complex(
    image: &Grid,
    origin: Point,
    spacing: Rational,
    convention: LowerCellConvention,
) -> Result<(CubicalComplex, CellConstFunction)> {
    let d = image.extents.len();
    let complex = CubicalComplex::new(origin, vec![spacing; d], image.extents.clone())?;
    let values: Vec<Rational> = (0..complex.cell_count())
        .map(|c| {
            let incident = complex.incident_boxes(c).into_iter().map(|b| image.get(&b).clone());
            match convention {
                LowerCellConvention::Upper => incident.max(),
                LowerCellConvention::Lower => incident.min(),
            }
            .expect("every cell touches at least one box")
        })
        .collect();
    let g = CellConstFunction::with_auto_bound(&complex, values)?;
    Ok((complex, g))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectionScheme {
    /// Unit axes, then their negatives.
    Axes,
    /// Primitive integer vectors with positive leading component, by max-norm shell.
    RationalGrid,
    Explicit(Vec<Vec<Rational>>),
}

pub fn sample_directions(count: usize, n: usize, scheme: &DirectionScheme) -> Result<Vec<Direction>> {
    if n < 1 {
        return Err(Error::Invalid("ambient dimension must be ≥ 1".into()));
    }
    if count < 1 {
        return Err(Error::Invalid("direction count must be ≥ 1".into()));
    }
    match scheme {
        DirectionScheme::Axes => {
            if count > 2 * n {
                return Err(Error::Invalid(format!("only {} signed axes in dimension {n}", 2 * n)));
            }
            (0..count)
                .map(|k| {
                    let mut c = vec![Rational::zero(); n];
                    c[k % n] = if k < n { Rational::one() } else { -Rational::one() };
                    Direction::new(c)
                })
                .collect()
        }
        DirectionScheme::RationalGrid => {
            let mut out = Vec::with_capacity(count);
            let mut radius = 1i64;
            while out.len() < count {
                let shell = primitive_shell(n, radius);
                for v in shell {
                    if out.len() == count {
                        break;
                    }
                    out.push(Direction::from_ints(&v)?);
                }
                radius += 1;
            }
            Ok(out)
        }
        DirectionScheme::Explicit(list) => list
            .iter()
            .map(|c| {
                if c.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: c.len() });
                }
                Direction::new(c.clone())
            })
            .collect(),
    }
}

/// Primitive integer vectors of max-norm exactly `r` whose first nonzero entry is positive, in lex order.
fn primitive_shell(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let side = (2 * r + 1) as usize;
    for idx in super::complex::MultiIndex::new(&vec![side; n]) {
        let v: Vec<i64> = idx.iter().rev().map(|&i| i as i64 - r).collect();
        if v.iter().map(|x| x.abs()).max() != Some(r) {
            continue;
        }
        if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            continue;
        }
        let g = v.iter().fold(0i64, |g, &x| num::integer::gcd(g, x));
        if g == 1 {
            out.push(v);
        }
    }
    out.sort();
    out
}
