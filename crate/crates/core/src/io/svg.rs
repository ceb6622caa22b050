//! Static SVG plots. Step curves get a filled dot at the value a breakpoint
//! takes and a hollow dot at the other one-sided limit.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::geometry::rational::{fmt_rational, to_f64};
use crate::transforms::{Continuity, Curve};

const W: f64 = 640.0;
const H: f64 = 320.0;
const M: f64 = 40.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(xs: &[f64], ys: &[f64]) -> Self {
        let (mut x0, mut x1) = bounds(xs, -1.0, 1.0);
        let pad = ((x1 - x0) / 10.0).max(0.5);
        x0 -= pad;
        x1 += pad;
        let (mut y0, mut y1) = bounds(ys, 0.0, 0.0);
        y0 = y0.min(0.0);
        y1 = y1.max(0.0);
        let pad = ((y1 - y0) / 10.0).max(0.5);
        Frame { x0, x1, y0: y0 - pad, y1: y1 + pad }
    }
    fn x(&self, x: f64) -> f64 {
        M + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * M)
    }
    fn y(&self, y: f64) -> f64 {
        H - M - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * M)
    }
}

fn bounds(xs: &[f64], lo: f64, hi: f64) -> (f64, f64) {
    if xs.is_empty() {
        return (lo, hi);
    }
    xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)))
}

/// The plot as an SVG document.
pub fn svg_string(curve: &Curve, title: &str) -> String {
    let mut body = String::new();
    let frame;
    match curve {
        Curve::Step(s) => {
            let xs: Vec<f64> = s.breakpoints().iter().map(to_f64).collect();
            let ys: Vec<f64> = s.values().iter().map(to_f64).collect();
            frame = Frame::new(&xs, &ys);
            let mut edges = vec![frame.x0];
            edges.extend(&xs);
            edges.push(frame.x1);
            for (i, y) in ys.iter().enumerate() {
                let _ = writeln!(
                    body,
                    r#"<line class="step" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                    frame.x(edges[i]),
                    frame.y(*y),
                    frame.x(edges[i + 1]),
                    frame.y(*y)
                );
            }
            for (i, (b, label)) in xs.iter().zip(s.breakpoints()).enumerate() {
                let (at, other) = match s.convention() {
                    Continuity::Right => (ys[i + 1], ys[i]),
                    Continuity::Left => (ys[i], ys[i + 1]),
                };
                let _ = writeln!(body, r#"<circle class="open" cx="{:.2}" cy="{:.2}" r="4"/>"#, frame.x(*b), frame.y(other));
                let _ = writeln!(body, r#"<circle class="closed" cx="{:.2}" cy="{:.2}" r="4"/>"#, frame.x(*b), frame.y(at));
                let _ = writeln!(
                    body,
                    r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                    frame.x(*b),
                    H - M + 16.0,
                    fmt_rational(label)
                );
            }
        }
        Curve::Linear(p) => {
            let xs: Vec<f64> = p.knots().iter().map(to_f64).collect();
            let ys: Vec<f64> = p.values().iter().map(to_f64).collect();
            frame = Frame::new(&xs, &ys);
            let pts: Vec<String> = xs.iter().zip(&ys).map(|(x, y)| format!("{:.2},{:.2}", frame.x(*x), frame.y(*y))).collect();
            let _ = writeln!(body, r#"<polyline class="pl" points="{}"/>"#, pts.join(" "));
            for (x, y) in xs.iter().zip(&ys) {
                let _ = writeln!(body, r#"<circle class="knot" cx="{:.2}" cy="{:.2}" r="2"/>"#, frame.x(*x), frame.y(*y));
            }
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    out.push_str(
        "<style>line.step,polyline.pl{stroke:#1f4e9c;stroke-width:2;fill:none}\
         line.axis{stroke:#999;stroke-width:1}circle.closed,circle.knot{fill:#1f4e9c}\
         circle.open{fill:#fff;stroke:#1f4e9c;stroke-width:2}text{font:11px sans-serif;fill:#333}</style>\n",
    );
    let _ = writeln!(out, r#"<text x="{M}" y="20">{}</text>"#, escape(title));
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{M}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        frame.y(0.0),
        W - M,
        frame.y(0.0)
    );
    out.push_str(&body);
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_svg(curve: &Curve, title: &str, path: &Path) -> Result<()> {
    std::fs::write(path, svg_string(curve, title))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::int;
    use crate::transforms::{sect, StepCurve};

    #[test]
    fn disk_staircase() {
        let svg = svg_string(&Curve::Step(StepCurve::from_jumps([(int(-1), int(1))])), "disk");
        assert_eq!(svg.matches(r#"class="step""#).count(), 2);
        assert_eq!(svg.matches(r#"class="open""#).count(), 1);
        assert_eq!(svg.matches(r#"class="closed""#).count(), 1);
        assert!(svg.contains(">-1/1</text>"));
    }

    #[test]
    fn zero_curve_is_flat() {
        let svg = svg_string(&Curve::Step(StepCurve::zero()), "zero");
        assert_eq!(svg.matches(r#"class="step""#).count(), 1);
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn pl_polyline() {
        let s = sect(&StepCurve::from_jumps([(int(-1), int(1))]), &int(2)).unwrap();
        let svg = svg_string(&Curve::Linear(s.clone()), "sect");
        assert_eq!(svg.matches(r#"class="knot""#).count(), s.knots().len());
        assert!(svg.contains("<polyline"));
    }
}
