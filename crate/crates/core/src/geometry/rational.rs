//! Rational plumbing: the `p/q` wire format and ingestion-time quantization.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Formats as `p/q`; integers keep the explicit `/1`.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `-0.25` or `1e-3`.
/// Decimal input is converted exactly; no rounding happens here.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Rational(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{whole}{frac}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(all * num::pow(ten, scale as usize))
    } else {
        Rational::new(all, num::pow(ten, (-scale) as usize))
    };
    if negative {
        r = -r;
    }
    Ok(r)
}

/// Rounds `r` to the nearest multiple of `1/denom_bound` unless its denominator
/// already fits. Ties round away from zero.
pub fn quantize(r: &Rational, denom_bound: u64) -> Rational {
    let bound = BigInt::from(denom_bound.max(1));
    if r.denom() <= &bound {
        return r.clone();
    }
    let scaled = r * Rational::from_integer(bound.clone());
    Rational::new(scaled.round().to_integer(), bound)
}

/// Parses decimal or rational text and quantizes it.
pub fn parse_quantized(s: &str, denom_bound: u64) -> Result<Rational> {
    Ok(quantize(&parse_rational(s)?, denom_bound))
}

pub fn from_f64(x: f64, denom_bound: u64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::Rational(x.to_string()));
    }
    let exact = Rational::from_float(x).ok_or_else(|| Error::Rational(x.to_string()))?;
    Ok(quantize(&exact, denom_bound))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Smallest integer `w` with `w^2 > r` for `r ≥ 0`.
pub fn int_bound_above_sqrt(r: &Rational) -> BigInt {
    if r.is_negative() {
        return BigInt::zero();
    }
    let f = floor(r);
    let mut w = f.sqrt();
    while Rational::from_integer(&w * &w) <= *r {
        w += 1;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_keeps_denominator() {
        assert_eq!(fmt_rational(&int(-1)), "-1/1");
        assert_eq!(fmt_rational(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), int(250));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn quantization_contract() {
        assert_eq!(
            parse_quantized("0.333333", 1_000_000).unwrap(),
            ratio(333333, 1_000_000)
        );
        assert_eq!(parse_quantized("0.3333333", 1_000_000).unwrap(), ratio(333333, 1_000_000));
        assert_eq!(parse_quantized("1/3", 1_000_000).unwrap(), ratio(1, 3));
        assert_eq!(from_f64(0.5, 10).unwrap(), ratio(1, 2));
    }

    #[test]
    fn sqrt_bound() {
        assert_eq!(int_bound_above_sqrt(&int(4)), BigInt::from(3));
        assert_eq!(int_bound_above_sqrt(&ratio(1, 2)), BigInt::from(1));
        assert_eq!(int_bound_above_sqrt(&int(0)), BigInt::from(1));
    }
}
