//! Exact rationals with a binary64 shadow.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance for comparing values when one side is float-only.
pub const RATIO_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    FloatOnly,
}

/// A quantity known either exactly (rational) or only as a binary64.
///
/// When exact, `float` is the nearest binary64 to the rational.
#[derive(Clone, Debug)]
pub struct ExactValue {
    rational: Option<BigRational>,
    float: f64,
}

impl ExactValue {
    pub fn exact(r: BigRational) -> Self {
        let float = rational_to_f64(&r);
        Self {
            rational: Some(r),
            float,
        }
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::exact(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Self::exact(BigRational::from_integer(v.into()))
    }

    pub fn float_only(float: f64) -> Self {
        Self {
            rational: None,
            float,
        }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn is_exact(&self) -> bool {
        self.rational.is_some()
    }

    pub fn exactness(&self) -> Exactness {
        if self.is_exact() {
            Exactness::Exact
        } else {
            Exactness::FloatOnly
        }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        self.rational.as_ref()
    }

    pub fn to_f64(&self) -> f64 {
        self.float
    }

    pub fn is_zero(&self) -> bool {
        match &self.rational {
            Some(r) => r.is_zero(),
            None => self.float == 0.0,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.rational, &other.rational) {
            (Some(a), Some(b)) => Self::exact(a + b),
            _ => Self::float_only(self.float + other.float),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (&self.rational, &other.rational) {
            (Some(a), Some(b)) => Self::exact(a - b),
            _ => Self::float_only(self.float - other.float),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.rational, &other.rational) {
            (Some(a), Some(b)) => Self::exact(a * b),
            _ => Self::float_only(self.float * other.float),
        }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        Some(match (&self.rational, &other.rational) {
            (Some(a), Some(b)) => Self::exact(a / b),
            _ => Self::float_only(self.float / other.float),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        match &self.rational {
            Some(r) => {
                let mut acc = BigRational::one();
                for _ in 0..exp {
                    acc *= r;
                }
                Self::exact(acc)
            }
            None => Self::float_only(self.float.powi(exp as i32)),
        }
    }

    /// Exact comparison when both sides are exact, otherwise binary64 with
    /// `tol` absolute tolerance (values within `tol` compare equal).
    pub fn compare(&self, other: &Self, tol: f64) -> Ordering {
        match (&self.rational, &other.rational) {
            (Some(a), Some(b)) => a.cmp(b),
            _ => {
                let d = self.float - other.float;
                if d.abs() <= tol {
                    Ordering::Equal
                } else if d < 0.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// Equality of exact values, or within [`RATIO_TOLERANCE`] otherwise.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.compare(other, RATIO_TOLERANCE) == Ordering::Equal
    }

    /// Rational as `num/den` (or `num` for integers); float-only values in
    /// shortest round-trip decimal.
    pub fn to_repr(&self) -> String {
        match &self.rational {
            Some(r) => format_rational(r),
            None => format_float(self.float),
        }
    }

    /// Parses `num/den`, an integer, or (as float-only) a decimal.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Ok(r) = parse_rational(t) {
            return Ok(Self::exact(r));
        }
        f64::from_str(t)
            .map(Self::float_only)
            .map_err(|_| Error::InvalidRational(text.to_string()))
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        match (&self.rational, &other.rational) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.float.to_bits() == other.float.to_bits(),
            _ => false,
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_repr())
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shortest decimal that round-trips to the same binary64.
pub fn format_float(x: f64) -> String {
    let s = format!("{x:?}");
    s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Nearest binary64 to `r`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
        // Both exactly representable: a single correctly rounded division.
        if n.unsigned_abs() < (1 << 53) && d < (1 << 53) {
            return n as f64 / d as f64;
        }
    }
    r.to_f64().unwrap_or_else(|| {
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * f64::INFINITY
    })
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.rational {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_f64(self.float),
        }
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExactValue;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a \"num/den\" string or a number")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExactValue, E> {
                parse_rational(v)
                    .map(ExactValue::exact)
                    .map_err(|e| E::custom(e.to_string()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExactValue, E> {
                Ok(ExactValue::float_only(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExactValue, E> {
                Ok(ExactValue::float_only(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExactValue, E> {
                Ok(ExactValue::float_only(v as f64))
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repr_and_parse() {
        let v = ExactValue::ratio(32, 14);
        assert_eq!(v.to_repr(), "16/7");
        assert_eq!(ExactValue::integer(0).to_repr(), "0");
        assert_eq!(ExactValue::parse("16/7").unwrap(), v);
        assert!(!ExactValue::parse("2.5").unwrap().is_exact());
        assert!(ExactValue::parse("1/0").is_err());
        assert_eq!(format_float(3.0), "3");
        assert_eq!(format_float(0.1), "0.1");
    }

    #[test]
    fn float_shadow_is_nearest() {
        let v = ExactValue::ratio(128, 45);
        assert_eq!(v.to_f64(), 128.0 / 45.0);
        let big = ExactValue::ratio(BigInt::from(3).pow(80), BigInt::from(7).pow(70));
        let approx = (80.0 * 3f64.ln() - 70.0 * 7f64.ln()).exp();
        assert!((big.to_f64() / approx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_comparisons_use_tolerance() {
        let a = ExactValue::ratio(1, 3);
        let b = ExactValue::float_only(1.0 / 3.0 + 1e-12);
        assert_eq!(a.compare(&b, RATIO_TOLERANCE), Ordering::Equal);
        let c = ExactValue::ratio(1, 3).add(&ExactValue::ratio(1, 1_000_000_000_000i64));
        assert_eq!(a.compare(&c, RATIO_TOLERANCE), Ordering::Less);
    }

    #[test]
    fn json_forms() {
        let v = serde_json::to_string(&ExactValue::ratio(7, 4)).unwrap();
        assert_eq!(v, "\"7/4\"");
        let f: ExactValue = serde_json::from_str("2.168977776068").unwrap();
        assert!(!f.is_exact());
        let back: ExactValue = serde_json::from_str(&v).unwrap();
        assert_eq!(back, ExactValue::ratio(7, 4));
    }
}
