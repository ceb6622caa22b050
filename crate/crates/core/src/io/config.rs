//! Validated run configuration, recorded next to every output.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::image::ImageFormat;
use super::mesh::MeshFormat;
use crate::error::{Error, Result};
use crate::geometry::rational::{fmt_rational, Rational};
use crate::geometry::{sample_directions, Direction, DirectionScheme, LowerCellConvention};
use crate::transforms::TransformKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Mesh(MeshFormat),
    Image(ImageFormat),
    /// A curve bundle written by an earlier run.
    Bundle,
}

impl InputFormat {
    /// Format from the extension, and for PGM files the magic number.
    pub fn detect(path: &Path) -> Result<Self> {
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            return Ok(InputFormat::Bundle);
        }
        if let Some(f) = MeshFormat::from_extension(path) {
            return Ok(InputFormat::Mesh(f));
        }
        let mut head = [0u8; 2];
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm") || e.eq_ignore_ascii_case("pnm")) {
            use std::io::Read;
            std::fs::File::open(path)?.read_exact(&mut head)?;
        }
        ImageFormat::detect(path, &head)
            .map(InputFormat::Image)
            .ok_or_else(|| Error::Invalid(format!("cannot tell the format of {}", path.display())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: InputFormat,
    /// `axes`, `grid:<count>`, or an explicit list such as `1,0;1,1`.
    pub directions: String,
    pub transform: TransformKind,
    pub window: Option<String>,
    pub level: Option<String>,
    pub betti_k: Option<usize>,
    pub denom_bound: u64,
    pub convention: LowerCellConvention,
    pub out: PathBuf,
    pub seed: u64,
    /// Does not affect results, so it is left out of the recorded config.
    #[serde(skip)]
    pub workers: usize,
}

/// Parses `axes`, `axes:<count>`, `grid:<count>`, or `a,b;c,d` lists.
pub fn parse_directions(spec: &str, ambient: usize, denom_bound: u64) -> Result<Vec<Direction>> {
    let bad = || Error::Invalid(format!("bad direction spec {spec:?}"));
    let (scheme, count) = match spec.split_once(':') {
        Some((s, n)) => (s, Some(n.parse::<usize>().map_err(|_| bad())?)),
        None => (spec, None),
    };
    match scheme {
        "axes" => sample_directions(count.unwrap_or(ambient), ambient, &DirectionScheme::Axes),
        "grid" => sample_directions(count.unwrap_or(8), ambient, &DirectionScheme::RationalGrid),
        _ => {
            let list = spec
                .split(';')
                .map(|d| d.split(',').map(|c| crate::geometry::rational::parse_quantized(c, denom_bound)).collect())
                .collect::<Result<Vec<Vec<Rational>>>>()?;
            sample_directions(list.len(), ambient, &DirectionScheme::Explicit(list))
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.denom_bound == 0 {
            return Err(Error::Invalid("denominator bound must be ≥ 1".into()));
        }
        let parse = |s: &Option<String>| s.as_deref().map(crate::geometry::rational::parse_rational).transpose();
        parse(&self.window)?;
        let level = parse(&self.level)?;
        if matches!(self.transform, TransformKind::Lect | TransformKind::Select) && level.is_none() {
            return Err(Error::Invalid(format!("{} needs --level", self.transform.name())));
        }
        if self.directions.trim().is_empty() {
            return Err(Error::Invalid("empty direction spec".into()));
        }
        Ok(())
    }

    pub fn window(&self) -> Result<Option<Rational>> {
        self.window.as_deref().map(crate::geometry::rational::parse_rational).transpose()
    }

    pub fn level(&self) -> Result<Option<Rational>> {
        self.level.as_deref().map(crate::geometry::rational::parse_rational).transpose()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    /// Canonical `p/q` spelling of the numeric options.
    pub fn normalized(mut self) -> Result<Self> {
        self.window = self.window()?.as_ref().map(fmt_rational);
        self.level = self.level()?.as_ref().map(fmt_rational);
        Ok(self)
    }
}
