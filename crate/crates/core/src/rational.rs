//! Exact rationals: parsing, rounding and JSON rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Parses `"3/20"`, `"7"`, `"0.15"` or `"-1.5"` exactly. Exponents and binary floats are
/// not accepted.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("`{s}` is not an exact rational"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

pub fn ceil_u64(x: &Rational) -> Option<u64> {
    x.ceil().to_integer().to_u64()
}

pub fn floor_u64(x: &Rational) -> Option<u64> {
    x.floor().to_integer().to_u64()
}

/// `floor(x + 1/2)`.
pub fn round_half_up(x: &Rational) -> BigInt {
    (x + ratio(1, 2)).floor().to_integer()
}

/// Decimal rendering rounded half away from zero.
pub fn to_decimal(x: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = x.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>places$}", frac.to_string())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn clamp_nonnegative(x: &Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else {
        x.clone()
    }
}

pub fn is_proper_fraction(x: &Rational) -> bool {
    x.is_positive() && x < &Rational::one()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for ExactInt {
    fn from(n: &BigInt) -> Self {
        n.to_i64().map(ExactInt::Small).unwrap_or_else(|| ExactInt::Big(n.to_string()))
    }
}

/// JSON view of a rational: exact numerator and denominator plus a 6-place decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub num: ExactInt,
    pub den: ExactInt,
    pub decimal: String,
}

impl From<&Rational> for ExactValue {
    fn from(x: &Rational) -> Self {
        ExactValue { num: x.numer().into(), den: x.denom().into(), decimal: to_decimal(x, 6) }
    }
}

pub fn serialize_exact<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    ExactValue::from(x).serialize(s)
}

pub fn serialize_exact_opt<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    x.as_ref().map(ExactValue::from).serialize(s)
}

/// Serializes as the string form `"p/q"`.
pub fn serialize_ratio_str<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
