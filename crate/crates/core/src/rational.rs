//! Small helpers for the exact-integer arithmetic mode.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Rational numbers used for exact radii and lattice scales.
pub type Rational = Ratio<i64>;

/// Largest denominator accepted when turning a decimal into a rational.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

/// Best rational approximation of `value` with denominator at most
/// [`MAX_DENOMINATOR`], found with continued fractions.
///
/// Any decimal with at most six fractional digits is recovered exactly,
/// so `1.1` becomes `11/10` rather than the dyadic value of the `f64`.
pub fn rationalize(value: f64) -> Result<Rational> {
    if !value.is_finite() {
        return Err(invalid("value", format!("{value} is not finite")));
    }
    if value.abs() > 1e12 {
        return Err(invalid("value", format!("{value} is too large")));
    }
    let negative = value < 0.0;
    let x = value.abs();

    // convergents h/k
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut rest = x;
    let mut best = Ratio::new(x.round() as i64, 1);
    for _ in 0..64 {
        let a = rest.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > MAX_DENOMINATOR as i128 {
            break;
        }
        best = Ratio::new(h2 as i64, k2 as i64);
        if ((h2 as f64) / (k2 as f64) - x).abs() <= 1e-12 * x.max(1.0) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = rest - a;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    Ok(if negative { -best } else { best })
}

/// Parses `"p/q"`, an integer, or a decimal string into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| invalid("rational", format!("bad numerator in `{text}`")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| invalid("rational", format!("bad denominator in `{text}`")))?;
        if q == 0 {
            return Err(invalid("rational", "zero denominator"));
        }
        return Ok(Ratio::new(p, q));
    }
    let v: f64 = text
        .parse()
        .map_err(|_| invalid("rational", format!("cannot parse `{text}`")))?;
    rationalize(v)
}

pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `ceil(num/den)` and `floor(num/den)` for positive `den`.
pub(crate) fn div_ceil(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    let q = num.div_euclid(den);
    if num.rem_euclid(den).is_zero() {
        q
    } else {
        q + 1
    }
}

pub(crate) fn div_floor(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    num.div_euclid(den)
}

/// Squared ratio `(r / scale)^2` as a pair `(num, den)` with `den > 0`.
pub(crate) fn squared_over(r: &Rational, scale: &Rational) -> (i128, i128) {
    // (rn/rd)^2 / (sn/sd)^2 = (rn*sd)^2 / (rd*sn)^2
    let num = (*r.numer() as i128) * (*scale.denom() as i128);
    let den = (*r.denom() as i128) * (*scale.numer() as i128);
    let (num, den) = if den.is_negative() {
        (-num, -den)
    } else {
        (num, den)
    };
    (num * num, den * den)
}

/// Serde adaptor writing a rational as its `"p/q"` string.
pub mod as_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
