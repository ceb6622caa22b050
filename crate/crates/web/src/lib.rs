//! Browser bindings: transforms of small built-in shapes and pasted images
//! for a direction chosen by angle.

use serde_json::json;
use wasm_bindgen::prelude::*;

use euler_core::audit::fixtures;
use euler_core::geometry::rational::{fmt_rational, from_f64, Rational};
use euler_core::geometry::{Direction, LowerCellConvention, SimplicialComplex};
use euler_core::io::image::{image_complex, read_pixels, ImageFormat};
use euler_core::io::{bundle_to_json, svg_string};
use euler_core::transforms::{compute_bundle, Curve, ShapeInput, TransformBundle, TransformKind, TransformOptions};

/// Unit vector at `degrees`, with components rounded to thousandths.
pub fn direction_for(degrees: f64) -> Result<Direction, String> {
    let (s, c) = degrees.to_radians().sin_cos();
    let comp = |x: f64| from_f64(x, 1000).map_err(|e| e.to_string());
    Direction::new(vec![comp(c)?, comp(s)?]).map_err(|e| e.to_string())
}

fn shape(name: &str) -> Result<SimplicialComplex, String> {
    match name {
        "disk" => Ok(fixtures::disk(48)),
        "annulus" => Ok(fixtures::annulus(48)),
        other => Err(format!("unknown shape {other:?}")),
    }
}

fn parse_window(window: &str) -> Result<Option<Rational>, String> {
    let w = window.trim();
    if w.is_empty() {
        return Ok(None);
    }
    euler_core::geometry::rational::parse_rational(w).map(Some).map_err(|e| e.to_string())
}

fn bundle(input: &ShapeInput, kind: TransformKind, v: &Direction, opts: &TransformOptions) -> Result<TransformBundle, String> {
    compute_bundle(input, kind, std::slice::from_ref(v), opts, 1).map_err(|e| e.to_string())
}

fn panel(b: &TransformBundle, title: &str) -> serde_json::Value {
    let curve: &Curve = &b.curves[0];
    json!({
        "bundle": serde_json::from_str::<serde_json::Value>(&bundle_to_json(b)).expect("own output"),
        "svg": svg_string(curve, title),
    })
}

fn dir_text(v: &Direction) -> String {
    v.components().iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}

/// ECT and SECT of a built-in shape, plus whether inverting the SECT gives the ECT back.
pub fn shape_transforms(name: &str, degrees: f64, window: &str) -> Result<String, String> {
    let input = ShapeInput::Mesh(shape(name)?);
    let v = direction_for(degrees)?;
    let opts = TransformOptions { window: parse_window(window)?, ..Default::default() };
    let ect = bundle(&input, TransformKind::Ect, &v, &opts)?;
    let sect = bundle(&input, TransformKind::Sect, &v, &opts)?;
    let back = euler_core::transforms::invert_bundle(&sect).map_err(|e| e.to_string())?;
    Ok(json!({
        "direction": dir_text(&v),
        "ect": panel(&ect, &format!("ECT of {name}, v = ({})", dir_text(&v))),
        "sect": panel(&sect, &format!("SECT of {name}")),
        "round_trip": back.curves == ect.curves,
    })
    .to_string())
}

/// Betti curve of degree `k` of a built-in shape.
pub fn shape_betti(name: &str, degrees: f64, k: usize) -> Result<String, String> {
    let input = ShapeInput::Mesh(shape(name)?);
    let v = direction_for(degrees)?;
    let opts = TransformOptions { betti_k: Some(k), ..Default::default() };
    let b = bundle(&input, TransformKind::Betti, &v, &opts)?;
    Ok(json!({ "direction": dir_text(&v), "betti": panel(&b, &format!("β_{k} of {name}")) }).to_string())
}

/// ERT and SERT of an image given as CSV rows.
pub fn image_transforms(csv: &str, degrees: f64, convention: &str) -> Result<String, String> {
    let convention: LowerCellConvention = convention.parse().map_err(|e: euler_core::Error| e.to_string())?;
    let rows = read_pixels(csv.as_bytes(), ImageFormat::Csv, 1000).map_err(|e| e.to_string())?;
    let (complex, function) = image_complex(rows, convention).map_err(|e| e.to_string())?;
    let input = ShapeInput::Image { complex, function };
    let v = direction_for(degrees)?;
    let opts = TransformOptions::default();
    let ert = bundle(&input, TransformKind::Ert, &v, &opts)?;
    let sert = bundle(&input, TransformKind::Sert, &v, &opts)?;
    Ok(json!({
        "direction": dir_text(&v),
        "ert": panel(&ert, &format!("ERT, v = ({})", dir_text(&v))),
        "sert": panel(&sert, "SERT"),
    })
    .to_string())
}

#[wasm_bindgen(js_name = shapeTransforms)]
pub fn shape_transforms_js(name: &str, degrees: f64, window: &str) -> Result<String, JsValue> {
    shape_transforms(name, degrees, window).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = shapeBetti)]
pub fn shape_betti_js(name: &str, degrees: f64, k: usize) -> Result<String, JsValue> {
    shape_betti(name, degrees, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = imageTransforms)]
pub fn image_transforms_js(csv: &str, degrees: f64, convention: &str) -> Result<String, JsValue> {
    image_transforms(csv, degrees, convention).map_err(|e| JsValue::from_str(&e))
}
