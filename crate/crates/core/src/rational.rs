//! Exact rationals and their textual forms.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number used for every coefficient.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.125"`.
///
/// Decimals are converted exactly: `"0.1"` is `1/10`, not the nearest double.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| malformed())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, fraction) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(malformed());
    }
    if !whole.bytes().chain(fraction.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let digits = format!("{whole}{fraction}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| malformed())?;
    let den = num_traits::pow(BigInt::from(10), fraction.len());
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Canonical `p/q` text (`p` alone when the denominator is one).
pub fn format(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact value of a finite double.
pub fn from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

/// Fixed-point decimal with `places` digits, ties rounded to even.
pub fn to_decimal(value: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value * BigRational::from_integer(scale.clone());
    let floor = scaled.floor();
    let rest = &scaled - &floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut digits = floor.to_integer();
    if rest > half || (rest == half && digits.is_odd()) {
        digits += 1;
    }
    let negative = digits.is_negative();
    let text = digits.abs().to_string();
    let places = places as usize;
    let padded = format!("{text:0>width$}", width = places + 1);
    let (whole, fraction) = padded.split_at(padded.len() - places);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{fraction}")
    }
}

/// Exact square root when `value` is the square of a rational.
pub fn exact_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let num = value.numer().sqrt();
    let den = value.denom().sqrt();
    if &(&num * &num) == value.numer() && &(&den * &den) == value.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

pub(crate) mod serde_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_text_vec {
    use serde::{ser::SerializeSeq, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&super::format(v))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn decimal_rounding_is_half_to_even() {
        use super::{frac, from_f64, int, to_decimal};
        assert_eq!(to_decimal(&frac(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&frac(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&frac(-5, 2), 0), "-2");
        assert_eq!(to_decimal(&frac(-1, 3), 4), "-0.3333");
        assert_eq!(to_decimal(&int(7), 3), "7.000");
        assert_eq!(to_decimal(&frac(1, 20000), 4), "0.0000");
        assert_eq!(to_decimal(&frac(3, 20000), 4), "0.0002");
        // 0.1 + 0.2 is slightly above 0.3 as a double
        assert_eq!(to_decimal(&from_f64(0.1 + 0.2).unwrap(), 16), "0.3000000000000000");
        assert!(from_f64(f64::NAN).is_none());
    }

    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("0.5").unwrap(), frac(1, 2));
        assert_eq!(parse("10").unwrap(), int(10));
        assert_eq!(parse("-.125").unwrap(), frac(-1, 8));
        assert_eq!(parse("2.").unwrap(), int(2));
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse(""), Err(ParseRationalError::Empty));
        assert!(parse("1/0").is_err());
        assert!(parse("1e3").is_err());
        assert!(parse(".").is_err());
        assert!(parse("a/2").is_err());
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format(&frac(4, -6)), "-2/3");
        assert_eq!(format(&int(5)), "5");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(exact_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
        assert_eq!(exact_sqrt(&int(0)), Some(int(0)));
    }
}
