//! Betti numbers over GF(2) for sublevel subcomplexes.

use std::collections::HashMap;

use crate::error::Result;
use crate::geometry::rational::{int, Rational};
use crate::geometry::{Direction, EmbeddedComplex, PLFunction, SimplicialComplex};
use crate::transforms::{Continuity, StepCurve};

/// Dense GF(2) matrix stored column-wise as packed words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { rows, cols: vec![vec![0; rows.div_ceil(64)]; cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn set(&mut self, row: usize, col: usize) {
        assert!(row < self.rows, "row {row} out of range");
        self.cols[col][row / 64] |= 1 << (row % 64);
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cols[col][row / 64] >> (row % 64) & 1 == 1
    }

    /// Rank by column reduction on lowest set bits.
    pub fn rank(&self) -> usize {
        let mut reduced: HashMap<usize, Vec<u64>> = HashMap::new();
        for col in &self.cols {
            let mut col = col.clone();
            while let Some(low) = lowest_bit(&col) {
                match reduced.get(&low) {
                    Some(other) => col.iter_mut().zip(other).for_each(|(a, b)| *a ^= b),
                    None => {
                        reduced.insert(low, col);
                        break;
                    }
                }
            }
        }
        reduced.len()
    }
}

fn lowest_bit(words: &[u64]) -> Option<usize> {
    words.iter().enumerate().rev().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}

/// `β_0 … β_d` of a complex of dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

/// Betti numbers of the simplices of `complex` flagged in `keep`, which must be face-closed.
fn betti_of_mask(complex: &SimplicialComplex, keep: &[bool]) -> BettiVector {
    let Some(dim) = (0..complex.cell_count()).filter(|&c| keep[c]).map(|c| complex.cell_dim(c)).max() else {
        return BettiVector::default();
    };
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); dim + 1];
    for c in (0..complex.cell_count()).filter(|&c| keep[c]) {
        by_dim[complex.cell_dim(c)].push(c);
    }
    let local: HashMap<usize, usize> =
        by_dim.iter().flat_map(|ids| ids.iter().enumerate().map(|(i, &c)| (c, i))).collect();
    let ranks: Vec<usize> = (0..=dim + 1)
        .map(|k| {
            if k == 0 || k > dim {
                return 0;
            }
            let mut m = BitMatrix::zeros(by_dim[k - 1].len(), by_dim[k].len());
            for (j, &c) in by_dim[k].iter().enumerate() {
                for f in complex.boundary_faces(c) {
                    m.set(local[&f], j);
                }
            }
            m.rank()
        })
        .collect();
    BettiVector((0..=dim).map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1]).collect())
}

pub fn betti_numbers(complex: &SimplicialComplex) -> BettiVector {
    betti_of_mask(complex, &vec![true; complex.cell_count()])
}

/// The function filtering a sublevel subcomplex.
#[derive(Debug, Clone, Copy)]
pub enum Filtration<'a> {
    Pl(&'a PLFunction),
    Height(&'a Direction),
}

impl Filtration<'_> {
    pub fn vertex_values(&self, complex: &SimplicialComplex) -> Result<Vec<Rational>> {
        match self {
            Filtration::Pl(f) => f.resolved(complex),
            Filtration::Height(v) => {
                if v.dim() != complex.ambient_dim() {
                    return Err(crate::Error::DimensionMismatch { expected: complex.ambient_dim(), got: v.dim() });
                }
                Ok(complex.vertices().iter().map(|p| v.height(p)).collect())
            }
        }
    }
}

fn sublevel_mask(complex: &SimplicialComplex, values: &[Rational], t: &Rational) -> Vec<bool> {
    complex.simplices().iter().map(|s| s.iter().all(|&i| values[i] <= *t)).collect()
}

/// All simplices whose vertices all have value `≤ t`; `None` when empty.
pub fn sublevel_subcomplex(
    complex: &SimplicialComplex,
    f: Filtration<'_>,
    t: &Rational,
) -> Result<Option<SimplicialComplex>> {
    let values = f.vertex_values(complex)?;
    let mask = sublevel_mask(complex, &values, t);
    Ok(complex.filter(|s| mask[complex.cell_id(s).expect("own simplex")]))
}

/// Betti numbers of the sublevel subcomplex without materializing it.
pub fn sublevel_betti(complex: &SimplicialComplex, f: Filtration<'_>, t: &Rational) -> Result<BettiVector> {
    let values = f.vertex_values(complex)?;
    Ok(betti_of_mask(complex, &sublevel_mask(complex, &values, t)))
}

/// `t ↦ β_k(K_t^v)`, right-continuous with breakpoints among vertex heights.
pub fn betti_curve(complex: &SimplicialComplex, v: &Direction, k: usize) -> Result<StepCurve> {
    let values = Filtration::Height(v).vertex_values(complex)?;
    let candidates: Vec<Rational> = values.clone();
    Ok(StepCurve::from_sampler(Continuity::Right, candidates, |t| {
        int(betti_of_mask(complex, &sublevel_mask(complex, &values, t)).get(k) as i64)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::ratio;
    use crate::geometry::Point;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|c| Point::from_ints(c)).collect()
    }

    #[test]
    fn rank_basics() {
        let mut m = BitMatrix::zeros(3, 3);
        for (r, c) in [(0, 0), (1, 0), (1, 1), (2, 1), (0, 2), (2, 2)] {
            m.set(r, c);
        }
        assert_eq!(m.rank(), 2);
        assert!(m.get(2, 2) && !m.get(2, 0));
        let mut wide = BitMatrix::zeros(130, 2);
        wide.set(129, 0);
        wide.set(129, 1);
        wide.set(3, 1);
        assert_eq!(wide.rank(), 2);
    }

    #[test]
    fn circle_triangle_segments() {
        let tri = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        let circle = SimplicialComplex::build(tri.clone(), [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(betti_numbers(&circle), BettiVector(vec![1, 1]));
        let solid = SimplicialComplex::build(tri, [vec![0, 1, 2]]).unwrap();
        assert_eq!(betti_numbers(&solid), BettiVector(vec![1, 0, 0]));
        let segs =
            SimplicialComplex::build(pts(&[&[0], &[1], &[3], &[4]]), [vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(betti_numbers(&segs), BettiVector(vec![2, 0]));
    }

    #[test]
    fn hollow_tetrahedron() {
        let p = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let sphere = SimplicialComplex::build(p, [vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(betti_numbers(&sphere), BettiVector(vec![1, 0, 1]));
    }

    #[test]
    fn sublevel_examples() {
        let k = SimplicialComplex::build(pts(&[&[0], &[1]]), [vec![0, 1]]).unwrap();
        let v = Direction::from_ints(&[1]).unwrap();
        let sub = sublevel_subcomplex(&k, Filtration::Height(&v), &ratio(1, 2)).unwrap().unwrap();
        assert_eq!(sub.cell_count(), 1);
        let all = sublevel_subcomplex(&k, Filtration::Height(&v), &int(1)).unwrap().unwrap();
        assert_eq!(all.cell_count(), 3);
        assert!(sublevel_subcomplex(&k, Filtration::Height(&v), &int(-1)).unwrap().is_none());
    }

    #[test]
    fn betti_curve_of_circle() {
        let p = pts(&[&[0, 0], &[2, 0], &[1, 2]]);
        let circle = SimplicialComplex::build(p, [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let v = Direction::from_ints(&[0, 1]).unwrap();
        let b1 = betti_curve(&circle, &v, 1).unwrap();
        assert_eq!(b1, StepCurve::from_jumps([(int(2), int(1))]));
        let b0 = betti_curve(&circle, &v, 0).unwrap();
        assert_eq!(b0, StepCurve::from_jumps([(int(0), int(1))]));
        assert!(betti_curve(&circle, &v, 5).unwrap().is_zero());
    }
}
