//! Curve bundles as JSON and CSV with exact `p/q` numbers.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rational::{fmt_rational, parse_rational, Rational};
use crate::geometry::{Direction, LowerCellConvention};
use crate::transforms::{BundleMetadata, Continuity, Curve, PiecewiseLinearCurve, StepCurve, TransformBundle, TransformKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum CurveKind {
    Step,
    Pl,
}

#[derive(Debug, Serialize, Deserialize)]
struct CurveJson {
    kind: CurveKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    convention: Option<Continuity>,
    breakpoints: Vec<String>,
    values: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MetadataJson {
    source: String,
    #[serde(default)]
    window: Option<String>,
    #[serde(default)]
    level: Option<String>,
    #[serde(default)]
    betti_k: Option<usize>,
    #[serde(default)]
    convention: Option<LowerCellConvention>,
    #[serde(default)]
    denom_bound: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BundleJson {
    transform: TransformKind,
    metadata: MetadataJson,
    directions: Vec<Vec<String>>,
    curves: Vec<CurveJson>,
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(fmt_rational).collect()
}

fn rationals(xs: &[String]) -> Result<Vec<Rational>> {
    xs.iter().map(|s| parse_rational(s)).collect()
}

fn curve_json(c: &Curve, window: Option<&Rational>) -> CurveJson {
    match c {
        Curve::Step(s) => CurveJson {
            kind: CurveKind::Step,
            convention: Some(s.convention()),
            breakpoints: strings(s.breakpoints()),
            values: strings(s.values()),
            window: None,
        },
        Curve::Linear(p) => CurveJson {
            kind: CurveKind::Pl,
            convention: None,
            breakpoints: strings(p.knots()),
            values: strings(p.values()),
            window: window.map(fmt_rational),
        },
    }
}

fn curve_from_json(c: &CurveJson) -> Result<Curve> {
    let (b, v) = (rationals(&c.breakpoints)?, rationals(&c.values)?);
    Ok(match c.kind {
        CurveKind::Step => Curve::Step(StepCurve::new(c.convention.unwrap_or(Continuity::Right), b, v)?),
        CurveKind::Pl => Curve::Linear(PiecewiseLinearCurve::new(b, v)?),
    })
}

pub fn bundle_to_json(bundle: &TransformBundle) -> String {
    let m = &bundle.metadata;
    let doc = BundleJson {
        transform: bundle.kind,
        metadata: MetadataJson {
            source: m.source.clone(),
            window: m.window.as_ref().map(fmt_rational),
            level: m.level.as_ref().map(fmt_rational),
            betti_k: m.betti_k,
            convention: m.convention,
            denom_bound: m.denom_bound,
        },
        directions: bundle.directions.iter().map(|d| strings(d.components())).collect(),
        curves: bundle.curves.iter().map(|c| curve_json(c, m.window.as_ref())).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data") + "\n"
}

pub fn bundle_from_json(text: &str) -> Result<TransformBundle> {
    let doc: BundleJson = serde_json::from_str(text)?;
    if doc.directions.len() != doc.curves.len() {
        return Err(Error::Invalid(format!("{} directions but {} curves", doc.directions.len(), doc.curves.len())));
    }
    let opt = |s: &Option<String>| s.as_deref().map(parse_rational).transpose();
    Ok(TransformBundle {
        kind: doc.transform,
        directions: doc.directions.iter().map(|d| Direction::new(rationals(d)?)).collect::<Result<_>>()?,
        curves: doc.curves.iter().map(curve_from_json).collect::<Result<_>>()?,
        metadata: BundleMetadata {
            source: doc.metadata.source,
            window: opt(&doc.metadata.window)?,
            level: opt(&doc.metadata.level)?,
            betti_k: doc.metadata.betti_k,
            convention: doc.metadata.convention,
            denom_bound: doc.metadata.denom_bound,
        },
    })
}

/// One row per (direction, breakpoint, value). For step curves the value on
/// the far left sits on a row with breakpoint `-inf`; PL curves list knots.
pub fn bundle_to_csv(bundle: &TransformBundle) -> String {
    let mut out = String::from("direction,components,breakpoint,value\n");
    for (i, (d, c)) in bundle.directions.iter().zip(&bundle.curves).enumerate() {
        let comps = strings(d.components()).join(" ");
        let mut row = |b: &str, v: &Rational| out.push_str(&format!("{i},{comps},{b},{}\n", fmt_rational(v)));
        match c {
            Curve::Step(s) => {
                row("-inf", &s.values()[0]);
                for (b, v) in s.breakpoints().iter().zip(&s.values()[1..]) {
                    row(&fmt_rational(b), v);
                }
            }
            Curve::Linear(p) => {
                for (b, v) in p.knots().iter().zip(p.values()) {
                    row(&fmt_rational(b), v);
                }
            }
        }
    }
    out
}

pub fn read_bundle(path: &Path) -> Result<TransformBundle> {
    bundle_from_json(&std::fs::read_to_string(path)?)
}

/// Writes `<transform>.json` and/or `<transform>.csv` into `dir`.
pub fn write_curves(bundle: &TransformBundle, dir: &Path, formats: &[OutputFormat]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut formats = formats.to_vec();
    formats.sort();
    formats.dedup();
    let mut written = Vec::new();
    for f in formats {
        let (ext, body) = match f {
            OutputFormat::Json => ("json", bundle_to_json(bundle)),
            OutputFormat::Csv => ("csv", bundle_to_csv(bundle)),
        };
        let path = dir.join(format!("{}.{ext}", bundle.kind.name()));
        std::fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::fixtures;
    use crate::geometry::rational::int;
    use crate::geometry::{sample_directions, DirectionScheme};
    use crate::transforms::{compute_bundle, ShapeInput, TransformOptions};

    fn disk_bundle(kind: TransformKind) -> TransformBundle {
        let dirs = sample_directions(4, 2, &DirectionScheme::Axes).unwrap();
        compute_bundle(&ShapeInput::Mesh(fixtures::disk(16)), kind, &dirs, &TransformOptions::default(), 2).unwrap()
    }

    #[test]
    fn disk_json_has_breakpoint_minus_one() {
        let json = bundle_to_json(&disk_bundle(TransformKind::Ect));
        assert!(json.contains("\"-1/1\""), "{json}");
        assert!(json.contains("\"convention\": \"right\""));
    }

    #[test]
    fn round_trips() {
        for kind in [TransformKind::Ect, TransformKind::Sect, TransformKind::Ert] {
            let b = disk_bundle(kind);
            assert_eq!(bundle_from_json(&bundle_to_json(&b)).unwrap(), b);
        }
        let mut b = disk_bundle(TransformKind::Ect);
        b.metadata.level = Some(int(2));
        b.metadata.convention = Some(LowerCellConvention::Lower);
        assert_eq!(bundle_from_json(&bundle_to_json(&b)).unwrap(), b);
    }

    #[test]
    fn empty_bundle_files() {
        let b = TransformBundle { kind: TransformKind::Ect, directions: vec![], curves: vec![], metadata: Default::default() };
        let dir = tempfile::tempdir().unwrap();
        let files = write_curves(&b, dir.path(), &[OutputFormat::Csv, OutputFormat::Json]).unwrap();
        assert_eq!(files.len(), 2);
        assert_eq!(read_bundle(&files[0]).unwrap(), b);
        assert_eq!(std::fs::read_to_string(&files[1]).unwrap(), "direction,components,breakpoint,value\n");
    }

    #[test]
    fn csv_rows() {
        let csv = bundle_to_csv(&disk_bundle(TransformKind::Ect));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "0,1/1 0/1,-inf,0/1");
        assert_eq!(lines[2], "0,1/1 0/1,-1/1,1/1");
        assert_eq!(lines.len(), 1 + 4 * 2);
    }
}
