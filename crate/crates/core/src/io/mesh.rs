//! OFF and OBJ (vertex/face subset) meshes.

use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::rational::{parse_quantized, Rational};
use crate::geometry::{Point, SimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshFormat {
    Off,
    Obj,
}

impl MeshFormat {
    pub fn from_extension(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "off" => Some(MeshFormat::Off),
            "obj" => Some(MeshFormat::Obj),
            _ => None,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn coord(tok: &str, line: usize, denom_bound: u64) -> Result<Rational> {
    parse_quantized(tok, denom_bound).map_err(|_| parse_err(line, format!("bad coordinate {tok:?}")))
}

/// Drops trailing coordinates that vanish on every vertex, so planar meshes
/// written with `z = 0` live in the plane.
fn trim_flat_axes(mut points: Vec<Vec<Rational>>) -> Vec<Point> {
    let dim = points.iter().map(Vec::len).max().unwrap_or(0);
    let mut keep = dim;
    while keep > 1 && points.iter().all(|p| p.get(keep - 1).is_none_or(num::Zero::is_zero)) {
        keep -= 1;
    }
    points
        .iter_mut()
        .map(|p| {
            p.resize(keep, Rational::from_integer(0.into()));
            Point::new(std::mem::take(p))
        })
        .collect()
}

fn build(points: Vec<Vec<Rational>>, faces: Vec<(usize, Vec<usize>)>) -> Result<SimplicialComplex> {
    let n = points.len();
    for (line, f) in &faces {
        if let Some(&bad) = f.iter().find(|&&i| i >= n) {
            return Err(parse_err(*line, format!("vertex index {bad} out of range (0..{n})")));
        }
    }
    let vertices = trim_flat_axes(points);
    let simplices: Vec<Vec<usize>> = if faces.is_empty() {
        (0..n).map(|i| vec![i]).collect()
    } else {
        faces.into_iter().map(|(_, f)| f).collect()
    };
    let complex = SimplicialComplex::build(vertices, simplices)?;
    for w in complex.warnings() {
        log::warn!("{w}");
    }
    Ok(complex)
}

/// Meaningful lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_off(text: &str, denom_bound: u64) -> Result<SimplicialComplex> {
    let mut it = lines(text).peekable();
    let (first_line, first) = it.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let (first_line, header_tokens): (usize, Vec<&str>) = match first.strip_prefix("OFF") {
        Some(rest) if rest.trim().is_empty() => {
            let (line, l) = it.next().ok_or_else(|| parse_err(first_line, "missing counts line"))?;
            (line, l.split_whitespace().collect())
        }
        Some(rest) => (first_line, rest.split_whitespace().collect()),
        None => (first_line, first.split_whitespace().collect()),
    };
    let counts: Vec<usize> = header_tokens
        .iter()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(first_line, "malformed header: expected vertex and face counts"))?;
    if counts.len() < 2 {
        return Err(parse_err(first_line, "malformed header: expected vertex and face counts"));
    }
    let (nv, nf) = (counts[0], counts[1]);
    let mut points = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, l) = it.next().ok_or_else(|| parse_err(0, format!("expected {nv} vertex lines")))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(parse_err(line, "vertex needs at least 2 coordinates"));
        }
        points.push(toks.iter().take(3).map(|t| coord(t, line, denom_bound)).collect::<Result<Vec<_>>>()?);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, l) = it.next().ok_or_else(|| parse_err(0, format!("expected {nf} face lines")))?;
        let toks: Vec<usize> = l
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(line, "face indices must be non-negative integers"))?;
        let (&k, rest) = toks.split_first().ok_or_else(|| parse_err(line, "empty face"))?;
        if k == 0 || rest.len() < k {
            return Err(parse_err(line, format!("face declares {k} vertices, has {}", rest.len())));
        }
        if k > 3 {
            return Err(parse_err(line, format!("{k}-gon face: triangulate first")));
        }
        faces.push((line, rest[..k].to_vec()));
    }
    if let Some((line, _)) = it.next() {
        return Err(parse_err(line, "trailing data after faces"));
    }
    build(points, faces)
}

fn obj_index(tok: &str, line: usize, count: usize) -> Result<usize> {
    let head = tok.split('/').next().unwrap_or("");
    let i: i64 = head.parse().map_err(|_| parse_err(line, format!("bad index {tok:?}")))?;
    let resolved = if i < 0 { count as i64 + i } else { i - 1 };
    if i == 0 || resolved < 0 {
        return Err(parse_err(line, format!("vertex index {i} out of range")));
    }
    Ok(resolved as usize)
}

fn parse_obj(text: &str, denom_bound: u64) -> Result<SimplicialComplex> {
    let mut points = Vec::new();
    let mut faces = Vec::new();
    for (line, l) in lines(text) {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("v") => {
                let c: Vec<&str> = toks.take(3).collect();
                if c.len() < 2 {
                    return Err(parse_err(line, "vertex needs at least 2 coordinates"));
                }
                points.push(c.iter().map(|t| coord(t, line, denom_bound)).collect::<Result<Vec<_>>>()?);
            }
            Some(kind @ ("f" | "l" | "p")) => {
                let idx = toks.map(|t| obj_index(t, line, points.len())).collect::<Result<Vec<_>>>()?;
                if idx.is_empty() {
                    return Err(parse_err(line, "element without vertices"));
                }
                if kind == "f" && idx.len() != 3 {
                    return Err(parse_err(line, format!("{}-vertex face: triangulate first", idx.len())));
                }
                if kind == "l" {
                    faces.extend(idx.windows(2).map(|w| (line, w.to_vec())));
                    if idx.len() == 1 {
                        faces.push((line, idx));
                    }
                } else if kind == "p" {
                    faces.extend(idx.into_iter().map(|i| (line, vec![i])));
                } else {
                    faces.push((line, idx));
                }
            }
            _ => {}
        }
    }
    if points.is_empty() {
        return Err(parse_err(1, "no vertices"));
    }
    build(points, faces)
}

pub fn parse_mesh_str(text: &str, format: MeshFormat, denom_bound: u64) -> Result<SimplicialComplex> {
    match format {
        MeshFormat::Off => parse_off(text, denom_bound),
        MeshFormat::Obj => parse_obj(text, denom_bound),
    }
}

/// Reads a mesh and quantizes its coordinates to denominators `≤ denom_bound`.
pub fn parse_mesh(path: &Path, format: MeshFormat, denom_bound: u64) -> Result<SimplicialComplex> {
    parse_mesh_str(&std::fs::read_to_string(path)?, format, denom_bound)
}
