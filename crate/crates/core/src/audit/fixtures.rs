//! Built-in shapes, images and functions used by the audit battery.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::rational::{int, ratio, Rational};
use crate::geometry::{
    build_cubical_complex, CellConstFunction, CubicalComplex, Direction, EmbeddedComplex, Grid, LowerCellConvention,
    PLFunction, Point, SimplicialComplex,
};

/// Rational point on the unit circle near angle `2πk/n`, from the
/// parametrization `((1 − m²)/(1 + m²), 2m/(1 + m²))` with `m ≈ tan(θ/2)`
/// rounded to thousandths. Quarter turns land exactly on the axes.
pub fn circle_point(k: usize, n: usize) -> (Rational, Rational) {
    let k = k % n;
    if 2 * k == n {
        return (int(-1), int(0));
    }
    let theta = std::f64::consts::TAU * k as f64 / n as f64;
    let m = ratio(((theta / 2.0).tan() * 1000.0).round() as i64, 1000);
    let one = int(1);
    let d = &one + &m * &m;
    ((&one - &m * &m) / &d, int(2) * &m / &d)
}

/// Fan triangulation of the unit disk from its center.
pub fn disk(boundary: usize) -> SimplicialComplex {
    let mut vertices = vec![Point::from_ints(&[0, 0])];
    vertices.extend((0..boundary).map(|k| {
        let (x, y) = circle_point(k, boundary);
        Point::new(vec![x, y])
    }));
    let tris = (0..boundary).map(|k| vec![0, 1 + k, 1 + (k + 1) % boundary]);
    SimplicialComplex::build(vertices, tris).expect("disk")
}

/// Annulus between radii 1/2 and 1, as in a ring of quads each split in two.
pub fn annulus(n: usize) -> SimplicialComplex {
    let mut vertices = Vec::with_capacity(2 * n);
    for k in 0..n {
        let (x, y) = circle_point(k, n);
        vertices.push(Point::new(vec![&x * ratio(1, 2), &y * ratio(1, 2)]));
        vertices.push(Point::new(vec![x, y]));
    }
    let mut tris = Vec::new();
    for k in 0..n {
        let (i0, o0, i1, o1) = (2 * k, 2 * k + 1, 2 * ((k + 1) % n), 2 * ((k + 1) % n) + 1);
        tris.push(vec![i0, o0, o1]);
        tris.push(vec![i0, o1, i1]);
    }
    SimplicialComplex::build(vertices, tris).expect("annulus")
}

/// Polyhedral torus with major radius 2 and minor radius 1 on an `a × b` grid.
pub fn torus(a: usize, b: usize) -> SimplicialComplex {
    let mut vertices = Vec::with_capacity(a * b);
    for i in 0..a {
        let (ct, st) = circle_point(i, a);
        for j in 0..b {
            let (cp, sp) = circle_point(j, b);
            let r = int(2) + &cp;
            vertices.push(Point::new(vec![&r * &ct, &r * &st, sp]));
        }
    }
    let id = |i: usize, j: usize| (i % a) * b + (j % b);
    let mut tris = Vec::new();
    for i in 0..a {
        for j in 0..b {
            tris.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            tris.push(vec![id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    SimplicialComplex::build(vertices, tris).expect("torus")
}

/// Cube `[-1, 1]^3` split into 8 boxes, each cut into 6 tetrahedra.
pub fn ball3() -> SimplicialComplex {
    CubicalComplex::new(Point::from_ints(&[-1, -1, -1]), vec![int(1); 3], vec![2, 2, 2])
        .and_then(|c| c.triangulate())
        .expect("3-ball")
}

/// A PL function and a label.
pub struct NamedPl {
    pub name: &'static str,
    pub mesh: &'static str,
    pub f: PLFunction,
}

/// Five non-height PL functions over the disk, annulus and torus meshes.
pub fn pl_functions(disk: &SimplicialComplex, annulus: &SimplicialComplex, torus: &SimplicialComplex) -> Vec<NamedPl> {
    let c = |p: &Point, i: usize| p.coords()[i].clone();
    vec![
        NamedPl { name: "x^2+y^2", mesh: "disk", f: PLFunction::from_fn(disk, |p| c(p, 0) * c(p, 0) + c(p, 1) * c(p, 1)) },
        NamedPl { name: "|x|-y^2", mesh: "disk", f: PLFunction::from_fn(disk, |p| num::Signed::abs(&c(p, 0)) - c(p, 1) * c(p, 1)) },
        NamedPl { name: "x*y", mesh: "annulus", f: PLFunction::from_fn(annulus, |p| c(p, 0) * c(p, 1)) },
        NamedPl {
            name: "vertex-index-mod-3",
            mesh: "annulus",
            f: PLFunction::new((0..annulus.vertices().len()).map(|i| int((i % 3) as i64)).collect()),
        },
        NamedPl { name: "z^2-x", mesh: "torus", f: PLFunction::from_fn(torus, |p| c(p, 2) * c(p, 2) - c(p, 0)) },
    ]
}

/// Image centered at the origin with unit pixels.
pub fn image(rows: Vec<Vec<Rational>>, convention: LowerCellConvention) -> (CubicalComplex, CellConstFunction) {
    let grid = Grid::from_rows(rows).expect("rectangular");
    let (w, h) = (grid.extents[0] as i64, grid.extents[1] as i64);
    let origin = Point::new(vec![ratio(-w, 2), ratio(-h, 2)]);
    build_cubical_complex(&grid, origin, int(1), convention).expect("image")
}

pub fn two_pixel(a: Rational, b: Rational) -> (CubicalComplex, CellConstFunction) {
    image(vec![vec![a, b]], LowerCellConvention::Upper)
}

pub fn checkerboard(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|r| (0..n).map(|c| int(((r + c) % 2) as i64)).collect()).collect()
}

/// Integer blob: value `max(0, 4 - d)` for the Chebyshev distance `d` to the center.
pub fn integer_blob(n: usize) -> Vec<Vec<Rational>> {
    let mid = (n as i64 - 1) as f64 / 2.0;
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let d = (r as f64 - mid).abs().max((c as f64 - mid).abs()).floor() as i64;
                    int((4 - d).max(0))
                })
                .collect()
        })
        .collect()
}

/// Rational image with values `((r·n + c) mod q) / q`, zero on the border.
pub fn rational_ramp(n: usize, q: i64) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == 0 || c == 0 || r == n - 1 || c == n - 1 {
                        int(0)
                    } else {
                        ratio(((r * n + c) as i64) % q, q)
                    }
                })
                .collect()
        })
        .collect()
}

/// Random geometric subcomplex of a jittered Freudenthal grid with at most
/// `max_cells` simplices. Jitter stays below a tenth of the grid spacing, so
/// the complex stays embedded.
pub fn random_complex(rng: &mut ChaCha8Rng, max_cells: usize) -> SimplicialComplex {
    let dim = rng.gen_range(1..=3usize);
    let ambient = rng.gen_range(dim..=3usize);
    let extents: Vec<usize> = (0..dim).map(|_| rng.gen_range(1..=if dim == 3 { 2 } else { 3 })).collect();
    let grid = CubicalComplex::new(Point::new(vec![int(0); dim]), vec![int(1); dim], extents)
        .and_then(|c| c.triangulate())
        .expect("grid");
    let jitter = rng.gen_bool(0.6);
    let vertices: Vec<Point> = grid
        .vertices()
        .iter()
        .map(|p| {
            let mut coords: Vec<Rational> = p.coords().to_vec();
            coords.resize(ambient, int(0));
            if jitter {
                for x in coords.iter_mut() {
                    *x += ratio(rng.gen_range(-9..=9), 100);
                }
            }
            Point::new(coords)
        })
        .collect();
    let mut pool: Vec<Vec<usize>> = grid.simplices().to_vec();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut size = 0;
    for _ in 0..pool.len() * 2 {
        if pool.is_empty() {
            break;
        }
        let s = pool.swap_remove(rng.gen_range(0..pool.len()));
        let mut trial = chosen.clone();
        trial.push(s);
        let k = SimplicialComplex::build(vertices.clone(), &trial).expect("subcomplex");
        if k.cell_count() <= max_cells {
            size = k.cell_count();
            chosen = trial;
        }
        if size + 3 > max_cells && rng.gen_bool(0.5) {
            break;
        }
    }
    SimplicialComplex::build(vertices, &chosen).expect("non-empty")
}

pub fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Direction {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        if let Ok(d) = Direction::from_ints(&c) {
            return d;
        }
    }
}

/// Random cell-wise constant function with values `k/q`, `|k| ≤ 3q`.
pub fn random_cell_function<C: EmbeddedComplex>(rng: &mut ChaCha8Rng, complex: &C, q: i64) -> CellConstFunction {
    let palette: Vec<Rational> = (0..4).map(|_| ratio(rng.gen_range(-3 * q..=3 * q), q)).collect();
    let values = (0..complex.cell_count()).map(|_| palette[rng.gen_range(0..palette.len())].clone()).collect();
    CellConstFunction::with_auto_bound(complex, values).expect("values per cell")
}
