//! Grayscale images: PGM (P2 text, P5 binary) and CSV.

use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::rational::{int, parse_quantized, ratio, Rational};
use crate::geometry::{build_cubical_complex, CellConstFunction, CubicalComplex, Grid, LowerCellConvention, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageFormat {
    PgmP2,
    PgmP5,
    Csv,
}

impl ImageFormat {
    /// `.csv` by extension; `.pgm`/`.pnm` by magic number.
    pub fn detect(path: &Path, bytes: &[u8]) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(ImageFormat::Csv),
            "pgm" | "pnm" => match bytes.get(..2) {
                Some(b"P2") => Some(ImageFormat::PgmP2),
                Some(b"P5") => Some(ImageFormat::PgmP5),
                _ => None,
            },
            _ => None,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Header tokens of a PGM file and the byte offset just past the single
/// whitespace byte that ends the header.
fn pgm_header(bytes: &[u8]) -> Result<(Vec<(usize, u64)>, usize)> {
    let mut tokens = Vec::new();
    let mut i = 2;
    let mut line = 1;
    while tokens.len() < 3 {
        match bytes.get(i) {
            None => return Err(parse_err(line, "truncated PGM header")),
            Some(b'#') => {
                while bytes.get(i).is_some_and(|&b| b != b'\n') {
                    i += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => {
                if *b == b'\n' {
                    line += 1;
                }
                i += 1;
            }
            Some(_) => {
                let start = i;
                while bytes.get(i).is_some_and(|b| !b.is_ascii_whitespace()) {
                    i += 1;
                }
                let tok = std::str::from_utf8(&bytes[start..i]).unwrap_or("");
                let n = tok.parse::<u64>().map_err(|_| parse_err(line, format!("bad header field {tok:?}")))?;
                tokens.push((line, n));
            }
        }
    }
    if !bytes.get(i).is_some_and(|b| b.is_ascii_whitespace()) {
        return Err(parse_err(line, "truncated PGM header"));
    }
    Ok((tokens, i + 1))
}

fn pgm(bytes: &[u8], binary: bool) -> Result<Vec<Vec<Rational>>> {
    let (header, body) = pgm_header(bytes)?;
    let (w, h, maxval) = (header[0].1 as usize, header[1].1 as usize, header[2].1);
    if w == 0 || h == 0 {
        return Err(parse_err(header[0].0, "image must be non-empty"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(parse_err(header[2].0, format!("maxval {maxval} outside 1..=65535")));
    }
    let raw: Vec<u64> = if binary {
        let width = if maxval < 256 { 1 } else { 2 };
        let payload = &bytes[body..];
        if payload.len() < w * h * width {
            return Err(parse_err(header[2].0 + 1, format!("truncated payload: {} of {} bytes", payload.len(), w * h * width)));
        }
        payload.chunks(width).take(w * h).map(|c| c.iter().fold(0u64, |acc, &b| acc * 256 + b as u64)).collect()
    } else {
        let text = std::str::from_utf8(&bytes[body..]).map_err(|_| parse_err(header[2].0, "P2 payload is not text"))?;
        let mut vals = Vec::with_capacity(w * h);
        for (off, l) in text.lines().enumerate() {
            let line = header[2].0 + 1 + off;
            for tok in l.split('#').next().unwrap_or("").split_whitespace() {
                vals.push(tok.parse::<u64>().map_err(|_| parse_err(line, format!("bad pixel {tok:?}")))?);
            }
        }
        if vals.len() < w * h {
            return Err(parse_err(header[2].0, format!("truncated payload: {} of {} pixels", vals.len(), w * h)));
        }
        vals.truncate(w * h);
        vals
    };
    if let Some(&v) = raw.iter().find(|&&v| v > maxval) {
        return Err(parse_err(header[2].0, format!("pixel {v} exceeds maxval {maxval}")));
    }
    let m = maxval as i64;
    Ok(raw.chunks(w).map(|row| row.iter().map(|&v| ratio(v as i64, m)).collect()).collect())
}

fn csv(text: &str, denom_bound: u64) -> Result<Vec<Vec<Rational>>> {
    let mut rows = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let row = l
            .split(',')
            .map(|t| parse_quantized(t.trim(), denom_bound).map_err(|_| parse_err(i + 1, format!("bad value {:?}", t.trim()))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(parse_err(i + 1, format!("row has {} values, expected {first}", row.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(1, "no rows"));
    }
    Ok(rows)
}

/// Pixel values as rows of rationals: PGM values become `value/maxval`,
/// CSV values are read exactly and quantized.
pub fn read_pixels(bytes: &[u8], format: ImageFormat, denom_bound: u64) -> Result<Vec<Vec<Rational>>> {
    match format {
        ImageFormat::PgmP2 | ImageFormat::PgmP5 => {
            let magic = if format == ImageFormat::PgmP2 { b"P2" } else { b"P5" };
            if bytes.get(..2) != Some(magic) {
                return Err(parse_err(1, "wrong PGM magic number"));
            }
            pgm(bytes, format == ImageFormat::PgmP5)
        }
        ImageFormat::Csv => {
            csv(std::str::from_utf8(bytes).map_err(|_| parse_err(1, "CSV is not UTF-8"))?, denom_bound)
        }
    }
}

/// Unit pixels centered at the origin; row `r`, column `c` is box `(c, r)`.
pub fn image_complex(rows: Vec<Vec<Rational>>, convention: LowerCellConvention) -> Result<(CubicalComplex, CellConstFunction)> {
    let grid = Grid::from_rows(rows)?;
    let origin = Point::new(grid.extents.iter().map(|&e| ratio(-(e as i64), 2)).collect());
    build_cubical_complex(&grid, origin, int(1), convention)
}

pub fn parse_image_str(
    bytes: &[u8],
    format: ImageFormat,
    denom_bound: u64,
    convention: LowerCellConvention,
) -> Result<(CubicalComplex, CellConstFunction)> {
    image_complex(read_pixels(bytes, format, denom_bound)?, convention)
}

pub fn parse_image(
    path: &Path,
    format: ImageFormat,
    denom_bound: u64,
    convention: LowerCellConvention,
) -> Result<(CubicalComplex, CellConstFunction)> {
    parse_image_str(&std::fs::read(path)?, format, denom_bound, convention)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_values_over_maxval() {
        let rows = read_pixels(b"P2\n# two pixels\n2 1\n3\n1 3\n", ImageFormat::PgmP2, 100).unwrap();
        assert_eq!(rows, vec![vec![ratio(1, 3), int(1)]]);
    }

    #[test]
    fn p5_binary_and_truncation() {
        let mut bytes = b"P5 2 2 255\n".to_vec();
        bytes.extend([0u8, 255, 51, 102]);
        let rows = read_pixels(&bytes, ImageFormat::PgmP5, 100).unwrap();
        assert_eq!(rows, vec![vec![int(0), int(1)], vec![ratio(1, 5), ratio(2, 5)]]);
        bytes.pop();
        assert!(read_pixels(&bytes, ImageFormat::PgmP5, 100).unwrap_err().to_string().contains("truncated"));
        let wide = [b"P5 1 1 1000\n".as_slice(), &[1u8, 244]].concat();
        assert_eq!(read_pixels(&wide, ImageFormat::PgmP5, 100).unwrap(), vec![vec![ratio(500, 1000)]]);
        assert!(read_pixels(b"P2\n2 2\n3\n1 2 3\n", ImageFormat::PgmP2, 100).is_err());
    }

    #[test]
    fn csv_exact_and_ragged() {
        let rows = read_pixels(b"0, 0.5\n1/3, 2\n", ImageFormat::Csv, 1000).unwrap();
        assert_eq!(rows, vec![vec![int(0), ratio(1, 2)], vec![ratio(1, 3), int(2)]]);
        let e = read_pixels(b"1,2\n3\n", ImageFormat::Csv, 10).unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
    }

    #[test]
    fn all_zero_image_is_zero_function() {
        let (_, g) = parse_image_str(b"P2 3 3 9\n0 0 0 0 0 0 0 0 0\n", ImageFormat::PgmP2, 10, LowerCellConvention::Upper).unwrap();
        assert!(g.values().iter().all(num::Zero::is_zero));
    }
}
