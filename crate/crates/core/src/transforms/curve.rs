//! Exact step curves and continuous piecewise-linear curves.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rational::{fmt_rational, int, Rational};

/// Which side a step curve takes at its breakpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Continuity {
    /// Value at `b_i` is the value on `[b_i, b_{i+1})`.
    Right,
    /// Value at `b_i` is the value on `(b_{i-1}, b_i]`.
    Left,
}

/// Piecewise-constant function with finitely many exact breakpoints.
///
/// `values[0]` holds on the far left, `values[i]` between `breakpoints[i-1]`
/// and `breakpoints[i]`, and `values[m]` on the far right. The form is
/// canonical: adjacent values always differ, so `==` is function equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepCurve {
    convention: Continuity,
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl StepCurve {
    pub fn new(convention: Continuity, breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::Invalid(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("breakpoints must be strictly increasing".into()));
        }
        let mut c = StepCurve { convention, breakpoints, values };
        c.canonicalize();
        Ok(c)
    }

    pub fn constant(convention: Continuity, value: Rational) -> Self {
        StepCurve { convention, breakpoints: Vec::new(), values: vec![value] }
    }

    pub fn zero() -> Self {
        Self::constant(Continuity::Right, Rational::zero())
    }

    /// Right-continuous curve that is 0 on the far left and jumps by `delta` at `at`.
    pub fn from_jumps<I: IntoIterator<Item = (Rational, Rational)>>(jumps: I) -> Self {
        let mut jumps: Vec<(Rational, Rational)> = jumps.into_iter().collect();
        jumps.sort_by(|a, b| a.0.cmp(&b.0));
        let mut breakpoints = Vec::new();
        let mut values = vec![Rational::zero()];
        for (at, delta) in jumps {
            if breakpoints.last() == Some(&at) {
                *values.last_mut().unwrap() += delta;
            } else {
                let next = values.last().unwrap() + delta;
                breakpoints.push(at);
                values.push(next);
            }
        }
        let mut c = StepCurve { convention: Continuity::Right, breakpoints, values };
        c.canonicalize();
        c
    }

    /// Builds a curve from a function known to be constant between the given
    /// candidate breakpoints, sampling it once per interval.
    pub fn from_sampler<F: FnMut(&Rational) -> Rational>(
        convention: Continuity,
        candidates: impl IntoIterator<Item = Rational>,
        mut f: F,
    ) -> Self {
        let mut bps: Vec<Rational> = candidates.into_iter().collect();
        bps.sort();
        bps.dedup();
        let one = int(1);
        let values: Vec<Rational> = match convention {
            Continuity::Right => {
                let left = bps.first().map_or_else(Rational::zero, |b| b - &one);
                std::iter::once(f(&left)).chain(bps.iter().map(&mut f)).collect()
            }
            Continuity::Left => {
                let right = bps.last().map_or_else(Rational::zero, |b| b + &one);
                let mut v: Vec<Rational> = bps.iter().map(&mut f).collect();
                v.push(f(&right));
                v
            }
        };
        let mut c = StepCurve { convention, breakpoints: bps, values };
        c.canonicalize();
        c
    }

    fn canonicalize(&mut self) {
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut vals = Vec::with_capacity(self.values.len());
        vals.push(self.values[0].clone());
        for (b, v) in self.breakpoints.drain(..).zip(self.values.drain(1..)) {
            if vals.last() != Some(&v) {
                bps.push(b);
                vals.push(v);
            }
        }
        self.breakpoints = bps;
        self.values = vals;
    }

    pub fn convention(&self) -> Continuity {
        self.convention
    }
    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn eval(&self, t: &Rational) -> &Rational {
        match self.convention {
            Continuity::Right => self.right_limit(t),
            Continuity::Left => self.left_limit(t),
        }
    }

    pub fn left_limit(&self, t: &Rational) -> &Rational {
        &self.values[self.breakpoints.partition_point(|b| b < t)]
    }

    pub fn right_limit(&self, t: &Rational) -> &Rational {
        &self.values[self.breakpoints.partition_point(|b| b <= t)]
    }

    /// Points where the stored value differs from the left limit.
    pub fn left_discontinuities(&self) -> Vec<Rational> {
        self.breakpoints.iter().filter(|b| self.eval(b) != self.left_limit(b)).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.breakpoints.is_empty() && self.values[0].is_zero()
    }

    pub fn first_value(&self) -> &Rational {
        &self.values[0]
    }

    pub fn last_value(&self) -> &Rational {
        self.values.last().unwrap()
    }

    /// Same intervals with the opposite endpoint convention.
    pub fn with_convention(&self, convention: Continuity) -> Self {
        StepCurve { convention, ..self.clone() }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = StepCurve {
            convention: self.convention,
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        };
        out.canonicalize();
        out
    }

    /// `t ↦ self(t / c)` for `c > 0`: breakpoints are multiplied by `c`.
    pub fn stretched(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Invalid("stretch factor must be positive".into()));
        }
        Ok(StepCurve {
            convention: self.convention,
            breakpoints: self.breakpoints.iter().map(|b| b * c).collect(),
            values: self.values.clone(),
        })
    }

    pub fn add(&self, other: &StepCurve) -> Result<Self> {
        if self.convention != other.convention {
            return Err(Error::Invalid("cannot add curves with different conventions".into()));
        }
        let mut bps: Vec<Rational> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        bps.sort();
        bps.dedup();
        let conv = self.convention;
        Ok(StepCurve::from_sampler(conv, bps, |t| self.eval(t) + other.eval(t)))
    }

    /// Exact `∫_a^b` for `a ≤ b`.
    pub fn integral(&self, a: &Rational, b: &Rational) -> Rational {
        if a >= b {
            return Rational::zero();
        }
        let mut total = Rational::zero();
        let mut cursor = a.clone();
        let start = self.breakpoints.partition_point(|x| x <= a);
        for (i, bp) in self.breakpoints.iter().enumerate().skip(start) {
            if bp >= b {
                break;
            }
            total += &self.values[i] * (bp - &cursor);
            cursor = bp.clone();
        }
        let idx = self.breakpoints.partition_point(|x| x < b);
        total + &self.values[idx] * (b - &cursor)
    }

    /// Breakpoints plus one point between each pair and one beyond each end.
    pub fn probes(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let one = int(1);
        if let Some(first) = self.breakpoints.first() {
            out.push(first - &one);
        } else {
            out.push(Rational::zero());
        }
        for (i, b) in self.breakpoints.iter().enumerate() {
            out.push(b.clone());
            let next = self.breakpoints.get(i + 1).cloned().unwrap_or_else(|| b + &one + &one);
            out.push((b + &next) / int(2));
        }
        out
    }
}

impl std::fmt::Display for StepCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", fmt_rational(&self.values[0]))?;
        for (b, v) in self.breakpoints.iter().zip(&self.values[1..]) {
            let bracket = match self.convention {
                Continuity::Right => "[",
                Continuity::Left => "(",
            };
            write!(f, " |{bracket}{} {}", fmt_rational(b), fmt_rational(v))?;
        }
        Ok(())
    }
}

/// Continuous piecewise-linear curve on `[knots[0], knots[last]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiecewiseLinearCurve {
    knots: Vec<Rational>,
    values: Vec<Rational>,
}

impl PiecewiseLinearCurve {
    pub fn new(knots: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if knots.len() < 2 || knots.len() != values.len() {
            return Err(Error::Invalid("a PL curve needs ≥ 2 knots with one value each".into()));
        }
        if knots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("knots must be strictly increasing".into()));
        }
        Ok(PiecewiseLinearCurve { knots, values })
    }

    pub fn knots(&self) -> &[Rational] {
        &self.knots
    }
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.knots[0], self.knots.last().unwrap())
    }

    fn segment_slope(&self, i: usize) -> Rational {
        (&self.values[i + 1] - &self.values[i]) / (&self.knots[i + 1] - &self.knots[i])
    }

    /// Slope of the segment starting at or containing `t`; clamped to the
    /// first/last segment outside the domain.
    pub fn right_slope(&self, t: &Rational) -> Rational {
        let segs = self.knots.len() - 1;
        let i = self.knots.partition_point(|k| k <= t).saturating_sub(1).min(segs - 1);
        self.segment_slope(i)
    }

    /// Linear interpolation; `None` outside the domain.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let (lo, hi) = self.domain();
        if t < lo || t > hi {
            return None;
        }
        let i = self.knots.partition_point(|k| k <= t).saturating_sub(1).min(self.knots.len() - 2);
        Some(&self.values[i] + self.segment_slope(i) * (t - &self.knots[i]))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        PiecewiseLinearCurve { knots: self.knots.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::ratio;
    use proptest::prelude::*;

    fn disk() -> StepCurve {
        StepCurve::from_jumps([(int(-1), int(1))])
    }

    #[test]
    fn right_continuous_storage() {
        let c = disk();
        assert_eq!(c.eval(&int(-1)), &int(1));
        assert_eq!(c.left_limit(&int(-1)), &int(0));
        assert_eq!(c.eval(&ratio(-3, 2)), &int(0));
        assert_eq!(c.left_discontinuities(), vec![int(-1)]);
        let l = c.with_convention(Continuity::Left);
        assert_eq!(l.eval(&int(-1)), &int(0));
    }

    #[test]
    fn canonical_form_merges() {
        let c = StepCurve::new(Continuity::Right, vec![int(0), int(1)], vec![int(0), int(0), int(2)]).unwrap();
        assert_eq!(c.breakpoints(), &[int(1)]);
        let j = StepCurve::from_jumps([(int(0), int(1)), (int(0), int(-1))]);
        assert!(j.is_zero());
        assert!(StepCurve::new(Continuity::Right, vec![int(1), int(0)], vec![int(0); 3]).is_err());
    }

    #[test]
    fn integral_exact() {
        let c = disk();
        assert_eq!(c.integral(&int(-2), &int(2)), int(3));
        assert_eq!(c.integral(&int(-2), &int(0)), int(1));
        assert_eq!(c.integral(&ratio(-1, 2), &ratio(1, 2)), int(1));
        assert_eq!(c.integral(&int(3), &int(2)), int(0));
    }

    #[test]
    fn pl_slopes() {
        let p = PiecewiseLinearCurve::new(vec![int(0), int(1), int(3)], vec![int(0), int(2), int(0)]).unwrap();
        assert_eq!(p.right_slope(&int(0)), int(2));
        assert_eq!(p.right_slope(&int(1)), int(-1));
        assert_eq!(p.right_slope(&int(5)), int(-1));
        assert_eq!(p.right_slope(&int(-5)), int(2));
        assert_eq!(p.eval(&int(2)), Some(int(1)));
        assert_eq!(p.eval(&int(4)), None);
    }

    fn arb_curve() -> impl Strategy<Value = StepCurve> {
        proptest::collection::vec((-20i64..20, -3i64..4), 0..8).prop_map(|jumps| {
            StepCurve::from_jumps(jumps.into_iter().map(|(b, d)| (ratio(b, 3), int(d))))
        })
    }

    proptest! {
        #[test]
        fn sampler_reproduces_curve(c in arb_curve()) {
            let rebuilt = StepCurve::from_sampler(Continuity::Right, c.breakpoints().to_vec(), |t| c.eval(t).clone());
            prop_assert_eq!(rebuilt, c);
        }

        #[test]
        fn integral_is_additive(c in arb_curve(), a in -10i64..10, m in 0i64..10, b in 0i64..10) {
            let (a, m) = (int(a), int(a + m));
            let b = &m + int(b);
            prop_assert_eq!(c.integral(&a, &m) + c.integral(&m, &b), c.integral(&a, &b));
        }
    }
}
