//! Embedded cell complexes with exact rational coordinates.

use std::collections::{BTreeSet, HashMap};

use num::{Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Index of an open cell inside its owning complex.
pub type CellId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| super::rational::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(&self.0)
    }
}

/// A nonzero rational direction. Not normalized: heights `x · v` scale with `|v|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Direction(Vec<Rational>);

impl Direction {
    pub fn new(components: Vec<Rational>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Invalid("direction must have at least one component".into()));
        }
        if components.iter().all(Zero::is_zero) {
            return Err(Error::ZeroDirection);
        }
        Ok(Direction(components))
    }

    pub fn from_ints(components: &[i64]) -> Result<Self> {
        Self::new(components.iter().map(|&c| super::rational::int(c)).collect())
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Invalid("direction scale must be positive".into()));
        }
        Ok(Direction(self.0.iter().map(|x| x * c).collect()))
    }

    pub fn height(&self, p: &Point) -> Rational {
        p.dot(&self.0)
    }
}

/// Common view of simplicial and cubical complexes: open cells with a
/// dimension and the vertex set of their closure.
pub trait EmbeddedComplex {
    fn ambient_dim(&self) -> usize;
    fn vertices(&self) -> &[Point];
    fn cell_count(&self) -> usize;
    fn cell_dim(&self, id: CellId) -> usize;
    fn closure_vertex_ids(&self, id: CellId) -> &[usize];

    /// Largest cell dimension, or `None` for a complex without cells.
    fn dim(&self) -> Option<usize> {
        (0..self.cell_count()).map(|c| self.cell_dim(c)).max()
    }

    fn closure_vertices(&self, id: CellId) -> Vec<&Point> {
        let vs = self.vertices();
        self.closure_vertex_ids(id).iter().map(|&i| &vs[i]).collect()
    }

    /// Alternating count of open cells.
    fn euler_characteristic(&self) -> i64 {
        (0..self.cell_count())
            .map(|c| if self.cell_dim(c) % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

fn check_points(points: &[Point]) -> Result<usize> {
    let n = points.first().map(Point::dim).unwrap_or(1);
    if n == 0 {
        return Err(Error::Invalid("points need at least one coordinate".into()));
    }
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.dim() });
        }
    }
    Ok(n)
}

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    ambient: usize,
    vertices: Vec<Point>,
    /// Sorted vertex ids per simplex, ordered by (dimension, lexicographic).
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, CellId>,
    warnings: Vec<String>,
}

impl SimplicialComplex {
    /// Builds the face closure of the given simplices. Input may list only maximal faces.
    pub fn build<I, S>(vertices: Vec<Point>, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let ambient = check_points(&vertices)?;
        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let mut saw_any = false;
        for s in simplices {
            saw_any = true;
            let s = s.as_ref();
            let mut sorted = s.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() || sorted.len() != s.len() {
                return Err(Error::DegenerateSimplex(s.to_vec()));
            }
            if let Some(&bad) = sorted.iter().find(|&&i| i >= vertices.len()) {
                return Err(Error::InvalidVertexIndex { index: bad, count: vertices.len() });
            }
            insert_faces(&sorted, &mut all);
        }
        if !saw_any {
            return Err(Error::EmptyComplex);
        }
        let simplices: Vec<Vec<usize>> = all.into_iter().map(|(_, s)| s).collect();
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut warnings = Vec::new();
        let mut seen: HashMap<&Point, usize> = HashMap::new();
        for (i, p) in vertices.iter().enumerate() {
            if let Some(j) = seen.insert(p, i) {
                let msg = format!("vertices {j} and {i} share coordinates");
                log::warn!("{msg}");
                warnings.push(msg);
            }
        }
        Ok(SimplicialComplex { ambient, vertices, simplices, index, warnings })
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex(&self, id: CellId) -> &[usize] {
        &self.simplices[id]
    }

    pub fn cell_id(&self, simplex: &[usize]) -> Option<CellId> {
        let mut key = simplex.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Number of cells of each dimension, indexed by dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            out[s.len() - 1] += 1;
        }
        out
    }

    /// Ids of the codimension-one faces of a simplex.
    pub fn boundary_faces(&self, id: CellId) -> Vec<CellId> {
        let s = &self.simplices[id];
        if s.len() == 1 {
            return Vec::new();
        }
        (0..s.len())
            .map(|skip| {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                self.index[&face]
            })
            .collect()
    }

    /// Subcomplex of the simplices accepted by `keep`. The caller guarantees
    /// the accepted set is face-closed; faces are re-added regardless.
    pub fn filter<F: Fn(&[usize]) -> bool>(&self, keep: F) -> Option<Self> {
        let kept: Vec<&Vec<usize>> = self.simplices.iter().filter(|s| keep(s)).collect();
        if kept.is_empty() {
            return None;
        }
        Self::build(self.vertices.clone(), kept).ok()
    }
}

fn insert_faces(sorted: &[usize], out: &mut BTreeSet<(usize, Vec<usize>)>) {
    let k = sorted.len();
    for mask in 1u32..(1u32 << k) {
        let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| sorted[i]).collect();
        out.insert((face.len(), face));
    }
}

impl EmbeddedComplex for SimplicialComplex {
    fn ambient_dim(&self) -> usize {
        self.ambient
    }
    fn vertices(&self) -> &[Point] {
        &self.vertices
    }
    fn cell_count(&self) -> usize {
        self.simplices.len()
    }
    fn cell_dim(&self, id: CellId) -> usize {
        self.simplices[id].len() - 1
    }
    fn closure_vertex_ids(&self, id: CellId) -> &[usize] {
        &self.simplices[id]
    }
}

/// One open face of the grid, addressed in doubled coordinates: an odd
/// coordinate is an open unit interval along that axis, an even one a
/// lattice position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeCell {
    pub coords: Vec<usize>,
    pub dim: usize,
    pub vertex_ids: Vec<usize>,
}

/// All faces of all unit boxes of an axis-aligned grid.
#[derive(Debug, Clone)]
pub struct CubicalComplex {
    origin: Point,
    spacing: Vec<Rational>,
    extents: Vec<usize>,
    vertices: Vec<Point>,
    cells: Vec<CubeCell>,
    index: HashMap<Vec<usize>, CellId>,
}

impl CubicalComplex {
    /// `extents[i]` is the number of boxes along axis `i`; axis 0 varies fastest
    /// in vertex numbering.
    pub fn new(origin: Point, spacing: Vec<Rational>, extents: Vec<usize>) -> Result<Self> {
        let d = extents.len();
        if d == 0 || extents.contains(&0) {
            return Err(Error::GridShape(format!("extents {extents:?}")));
        }
        if origin.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: origin.dim() });
        }
        if spacing.len() != d || spacing.iter().any(|s| !s.is_positive()) {
            return Err(Error::GridShape("spacing must be positive, one per axis".into()));
        }
        let lattice: Vec<usize> = extents.iter().map(|e| e + 1).collect();
        let vertices: Vec<Point> = MultiIndex::new(&lattice)
            .map(|idx| {
                Point(
                    idx.iter()
                        .enumerate()
                        .map(|(a, &i)| &origin.0[a] + &spacing[a] * Rational::from_integer(i.into()))
                        .collect(),
                )
            })
            .collect();
        let doubled: Vec<usize> = extents.iter().map(|e| 2 * e + 1).collect();
        let mut cells: Vec<CubeCell> = MultiIndex::new(&doubled)
            .map(|coords| {
                let dim = coords.iter().filter(|c| *c % 2 == 1).count();
                let vertex_ids = corner_lattice(&coords)
                    .iter()
                    .map(|corner| linear_index(corner, &lattice))
                    .collect();
                CubeCell { coords, dim, vertex_ids }
            })
            .collect();
        cells.sort_by(|a, b| (a.dim, &a.coords).cmp(&(b.dim, &b.coords)));
        let index = cells.iter().enumerate().map(|(i, c)| (c.coords.clone(), i)).collect();
        Ok(CubicalComplex { origin, spacing, extents, vertices, cells, index })
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }
    pub fn spacing(&self) -> &[Rational] {
        &self.spacing
    }
    pub fn extents(&self) -> &[usize] {
        &self.extents
    }
    pub fn cells(&self) -> &[CubeCell] {
        &self.cells
    }

    pub fn cell_id(&self, doubled: &[usize]) -> Option<CellId> {
        self.index.get(doubled).copied()
    }

    /// Id of the top-dimensional box whose lower corner is `box_index` (in box units).
    pub fn box_cell(&self, box_index: &[usize]) -> Option<CellId> {
        let coords: Vec<usize> = box_index.iter().map(|i| 2 * i + 1).collect();
        self.cell_id(&coords)
    }

    /// Top-dimensional boxes whose closure contains the given cell, as box indices.
    pub fn incident_boxes(&self, id: CellId) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for (axis, &c) in self.cells[id].coords.iter().enumerate() {
            let choices: Vec<usize> = if c % 2 == 1 {
                vec![c / 2]
            } else {
                let mut v = Vec::new();
                if c >= 2 {
                    v.push(c / 2 - 1);
                }
                if c / 2 < self.extents[axis] {
                    v.push(c / 2);
                }
                v
            };
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&ch| {
                        let mut p = prefix.clone();
                        p.push(ch);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Freudenthal (Kuhn) subdivision: each box split into `d!` simplices along
    /// monotone lattice paths. Vertex numbering is preserved.
    pub fn triangulate(&self) -> Result<SimplicialComplex> {
        let d = self.extents.len();
        let lattice: Vec<usize> = self.extents.iter().map(|e| e + 1).collect();
        let perms = permutations(d);
        let mut simplices = Vec::new();
        for base in MultiIndex::new(&self.extents) {
            for perm in &perms {
                let mut cur = base.clone();
                let mut simplex = vec![linear_index(&cur, &lattice)];
                for &axis in perm {
                    cur[axis] += 1;
                    simplex.push(linear_index(&cur, &lattice));
                }
                simplices.push(simplex);
            }
        }
        SimplicialComplex::build(self.vertices.clone(), simplices)
    }
}

impl EmbeddedComplex for CubicalComplex {
    fn ambient_dim(&self) -> usize {
        self.extents.len()
    }
    fn vertices(&self) -> &[Point] {
        &self.vertices
    }
    fn cell_count(&self) -> usize {
        self.cells.len()
    }
    fn cell_dim(&self, id: CellId) -> usize {
        self.cells[id].dim
    }
    fn closure_vertex_ids(&self, id: CellId) -> &[usize] {
        &self.cells[id].vertex_ids
    }
}

fn corner_lattice(doubled: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &c in doubled {
        let choices = if c % 2 == 1 { vec![c / 2, c / 2 + 1] } else { vec![c / 2] };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&ch| {
                    let mut p = prefix.clone();
                    p.push(ch);
                    p
                })
            })
            .collect();
    }
    out
}

pub(crate) fn linear_index(idx: &[usize], shape: &[usize]) -> usize {
    idx.iter().rev().zip(shape.iter().rev()).fold(0, |acc, (&i, &n)| acc * n + i)
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Row-major multi-index iterator with axis 0 varying fastest.
pub(crate) struct MultiIndex {
    shape: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl MultiIndex {
    pub(crate) fn new(shape: &[usize]) -> Self {
        let next = if shape.contains(&0) { None } else { Some(vec![0; shape.len()]) };
        MultiIndex { shape: shape.to_vec(), next }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        for axis in 0..succ.len() {
            succ[axis] += 1;
            if succ[axis] < self.shape[axis] {
                self.next = Some(succ);
                return Some(cur);
            }
            succ[axis] = 0;
        }
        Some(cur)
    }
}
