//! Geometric oracle for `χ({x ∈ K : x·v ≤ t})`.
//!
//! Each closed simplex is clipped by the halfspace, the clipped polytope is
//! triangulated by pulling from its lexicographically smallest vertex, and
//! the resulting simplices are merged across the complex by exact
//! coordinates. The pulling order is global, so two polytopes sharing a face
//! triangulate that face identically and the merged set is a genuine
//! simplicial complex whose cells can simply be counted.

use std::collections::{BTreeSet, HashSet};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::rational::Rational;
use crate::geometry::{Direction, EmbeddedComplex, Point, SimplicialComplex};

struct ClipPoint {
    position: Point,
    /// Barycentric coordinates in the simplex being clipped.
    bary: Vec<Rational>,
    height: Rational,
}

/// Clipped triangulation of the sublevel set as sets of exact points.
pub fn clipped_cells(complex: &SimplicialComplex, v: &Direction, t: &Rational) -> Result<HashSet<Vec<Point>>> {
    if let Some(d) = complex.dim().filter(|&d| d > 3) {
        return Err(Error::OracleDimension(d));
    }
    if v.dim() != complex.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: complex.ambient_dim(), got: v.dim() });
    }
    let mut cells: HashSet<Vec<Point>> = HashSet::new();
    for simplex in complex.simplices() {
        let points = clip_simplex(complex, simplex, v, t);
        if points.is_empty() {
            continue;
        }
        let all: Vec<usize> = (0..points.len()).collect();
        let dim = affine_dim(&points, &all);
        for top in pulling_triangulation(&points, &all, dim, simplex.len(), t) {
            let mut key: Vec<Point> = top.iter().map(|&i| points[i].position.clone()).collect();
            key.sort();
            for face in faces(&key) {
                cells.insert(face);
            }
        }
    }
    Ok(cells)
}

pub fn chi_clipped_oracle(complex: &SimplicialComplex, v: &Direction, t: &Rational) -> Result<i64> {
    let cells = clipped_cells(complex, v, t)?;
    Ok(cells.iter().map(|c| if c.len() % 2 == 1 { 1 } else { -1 }).sum())
}

fn clip_simplex(complex: &SimplicialComplex, simplex: &[usize], v: &Direction, t: &Rational) -> Vec<ClipPoint> {
    let verts: Vec<&Point> = simplex.iter().map(|&i| &complex.vertices()[i]).collect();
    let heights: Vec<Rational> = verts.iter().map(|p| v.height(p)).collect();
    let k = simplex.len();
    let unit = |i: usize| -> Vec<Rational> {
        (0..k).map(|j| if j == i { Rational::one() } else { Rational::zero() }).collect()
    };
    let mut out = Vec::new();
    for i in 0..k {
        if heights[i] <= *t {
            out.push(ClipPoint { position: verts[i].clone(), bary: unit(i), height: heights[i].clone() });
        }
    }
    for i in 0..k {
        for j in 0..k {
            if heights[i] < *t && *t < heights[j] {
                let lambda = (t - &heights[i]) / (&heights[j] - &heights[i]);
                let position = Point(
                    verts[i]
                        .coords()
                        .iter()
                        .zip(verts[j].coords())
                        .map(|(a, b)| a + &lambda * (b - a))
                        .collect(),
                );
                let mut bary = vec![Rational::zero(); k];
                bary[i] = Rational::one() - &lambda;
                bary[j] = lambda;
                out.push(ClipPoint { position, bary, height: t.clone() });
            }
        }
    }
    out
}

/// Pulling triangulation of the polytope spanned by `subset`. Facets are the
/// maximal proper subsets on which one defining constraint is tight: a
/// barycentric coordinate vanishing, or the height reaching `t`.
fn pulling_triangulation(
    points: &[ClipPoint],
    subset: &[usize],
    dim: usize,
    k: usize,
    t: &Rational,
) -> Vec<Vec<usize>> {
    if subset.len() == dim + 1 {
        return vec![subset.to_vec()];
    }
    let apex = *subset
        .iter()
        .min_by(|&&a, &&b| points[a].position.cmp(&points[b].position))
        .expect("non-empty subset");
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let constraints = (0..k).map(Some).chain(std::iter::once(None));
    for c in constraints {
        let facet: Vec<usize> = subset
            .iter()
            .copied()
            .filter(|&q| match c {
                Some(i) => points[q].bary[i].is_zero(),
                None => points[q].height == *t,
            })
            .collect();
        if facet.is_empty() || facet.len() == subset.len() || facet.contains(&apex) {
            continue;
        }
        if affine_dim(points, &facet) + 1 == dim {
            facets.insert(facet);
        }
    }
    let mut out = Vec::new();
    for facet in facets {
        for mut simplex in pulling_triangulation(points, &facet, dim - 1, k, t) {
            simplex.push(apex);
            out.push(simplex);
        }
    }
    out
}

fn affine_dim(points: &[ClipPoint], subset: &[usize]) -> usize {
    let Some((&first, rest)) = subset.split_first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = rest
        .iter()
        .map(|&q| points[q].bary.iter().zip(&points[first].bary).map(|(a, b)| a - b).collect())
        .collect();
    rank(rows)
}

pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &pivot;
                for j in c..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

fn faces(sorted: &[Point]) -> Vec<Vec<Point>> {
    let k = sorted.len();
    (1u32..(1u32 << k))
        .map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).map(|i| sorted[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, ratio};

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::build(
            vec![Point::from_ints(&[0, 0]), Point::from_ints(&[2, 0]), Point::from_ints(&[0, 3])],
            [vec![0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn segment_clip() {
        let k = SimplicialComplex::build(vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0])], [vec![0, 1]])
            .unwrap();
        let v = Direction::from_ints(&[1, 0]).unwrap();
        let cells = clipped_cells(&k, &v, &ratio(1, 2)).unwrap();
        assert_eq!(cells.len(), 3);
        assert_eq!(chi_clipped_oracle(&k, &v, &ratio(1, 2)).unwrap(), 1);
    }

    #[test]
    fn triangle_extremes() {
        let v = Direction::from_ints(&[1, 2]).unwrap();
        assert_eq!(chi_clipped_oracle(&triangle(), &v, &int(-1)).unwrap(), 0);
        let cells = clipped_cells(&triangle(), &v, &int(0)).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(chi_clipped_oracle(&triangle(), &v, &int(0)).unwrap(), 1);
    }

    #[test]
    fn quadrilateral_clip_of_triangle() {
        // cut keeps the quad (0,0),(1,0),(1,3/2),(0,3)
        let v = Direction::from_ints(&[1, 0]).unwrap();
        let cells = clipped_cells(&triangle(), &v, &int(1)).unwrap();
        let counts = cells.iter().fold([0; 3], |mut acc, c| {
            acc[c.len() - 1] += 1;
            acc
        });
        assert_eq!(counts, [4, 5, 2]);
    }

    #[test]
    fn tetrahedron_clips_are_contractible() {
        let k = SimplicialComplex::build(
            vec![
                Point::from_ints(&[0, 0, 0]),
                Point::from_ints(&[1, 0, 0]),
                Point::from_ints(&[0, 1, 0]),
                Point::from_ints(&[0, 0, 1]),
            ],
            [vec![0, 1, 2, 3]],
        )
        .unwrap();
        let v = Direction::from_ints(&[1, 1, 1]).unwrap();
        for t in [ratio(1, 3), ratio(2, 3), int(1), ratio(1, 10)] {
            assert_eq!(chi_clipped_oracle(&k, &v, &t).unwrap(), 1, "t = {t}");
        }
        // prism clip: (1,1,0) cuts two vertices off
        let v = Direction::from_ints(&[1, 1, 0]).unwrap();
        assert_eq!(chi_clipped_oracle(&k, &v, &ratio(1, 2)).unwrap(), 1);
    }

    #[test]
    fn rejects_high_dimension() {
        let pts: Vec<Point> = (0..5)
            .map(|i| Point::new((0..4).map(|j| if i == j + 1 { int(1) } else { int(0) }).collect()))
            .collect();
        let k = SimplicialComplex::build(pts, [vec![0, 1, 2, 3, 4]]).unwrap();
        let v = Direction::from_ints(&[1, 0, 0, 0]).unwrap();
        assert!(matches!(chi_clipped_oracle(&k, &v, &int(0)), Err(Error::OracleDimension(4))));
    }
}
