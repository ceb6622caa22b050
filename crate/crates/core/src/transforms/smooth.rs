//! Smoothed transforms (SECT, SERT) and their exact inverses.

use num::{Signed, Zero};

use super::curve::{Continuity, PiecewiseLinearCurve, StepCurve};
use crate::error::{Error, Result};
use crate::geometry::rational::{fmt_rational, int, Rational};

/// `(max |breakpoint|) + 1`, or 1 for a curve without breakpoints.
pub fn default_window(curve: &StepCurve) -> Rational {
    curve.breakpoints().iter().map(|b| b.abs()).max().unwrap_or_else(Rational::zero) + int(1)
}

/// `t ↦ ∫_{−W}^t e − ((t + W)/2W) ∫_{−W}^{W} e` on `[−W, W]`.
pub fn smooth(curve: &StepCurve, window: &Rational) -> Result<PiecewiseLinearCurve> {
    if curve.convention() != Continuity::Right {
        return Err(Error::Invalid("smoothing expects a right-continuous curve in t".into()));
    }
    if !window.is_positive() {
        return Err(Error::WindowTooSmall(format!("window {} must be positive", fmt_rational(window))));
    }
    let lo = -window;
    if let Some(b) = curve.breakpoints().iter().find(|b| **b <= lo || *b >= window) {
        return Err(Error::WindowTooSmall(format!(
            "breakpoint {} is not strictly inside (-{w}, {w})",
            fmt_rational(b),
            w = fmt_rational(window)
        )));
    }
    if !curve.first_value().is_zero() {
        return Err(Error::Support(format!(
            "curve is {} left of the window, not 0",
            fmt_rational(curve.first_value())
        )));
    }
    let total = curve.integral(&lo, window);
    let width = window * int(2);
    let knots: Vec<Rational> = std::iter::once(lo.clone())
        .chain(curve.breakpoints().iter().cloned())
        .chain(std::iter::once(window.clone()))
        .collect();
    let values = knots
        .iter()
        .map(|k| curve.integral(&lo, k) - (k + window) / &width * &total)
        .collect();
    PiecewiseLinearCurve::new(knots, values)
}

/// Recovers the step curve from its smoothed version: right slope at `t`
/// minus the slope at the left end of the window. Using right slopes at the
/// knots pins the value on the measure-zero breakpoint set.
pub fn invert_smooth(s: &PiecewiseLinearCurve) -> StepCurve {
    let knots = s.knots();
    let base = s.right_slope(&knots[0]);
    let interior = &knots[1..knots.len() - 1];
    let values: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(interior.iter().map(|k| s.right_slope(k) - &base))
        .collect();
    StepCurve::new(Continuity::Right, interior.to_vec(), values).expect("knots are strictly increasing")
}

pub fn sect(ect: &StepCurve, window: &Rational) -> Result<PiecewiseLinearCurve> {
    smooth(ect, window)
}

pub fn invert_sect(s: &PiecewiseLinearCurve) -> StepCurve {
    invert_smooth(s)
}

pub fn sert(ert: &StepCurve, window: &Rational) -> Result<PiecewiseLinearCurve> {
    smooth(ert, window)
}

pub fn invert_sert(s: &PiecewiseLinearCurve) -> StepCurve {
    invert_smooth(s)
}
