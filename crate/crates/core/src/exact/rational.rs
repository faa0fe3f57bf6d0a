//! Rational scalars.
//!
//! The ground field is `num_rational::BigRational`, which already keeps the
//! denominator positive and the fraction reduced. This module adds the text
//! conventions used at every I/O boundary: rationals are written `"p/q"` and
//! parsed from `"p/q"`, plain integers or finite decimals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{literal}`: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    assert!(denom != 0, "zero denominator");
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Always `p/q`, including `0/1` and `3/1`.
pub fn fmt_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `p` for integers, `p/q` otherwise.
pub fn fmt_short(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        fmt_pq(r)
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// Non-negative integer value, if `r` is one that fits a `usize`.
pub fn as_usize(r: &Rational) -> Option<usize> {
    if r.is_integer() && !r.is_negative() {
        r.numer().to_usize()
    } else {
        None
    }
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = |reason| ParseRationalError {
        literal: text.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err("numerator is not an integer"))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err("denominator is not an integer"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(err("malformed decimal"));
        }
        let digits = format!("{whole_digits}{frac}");
        let magnitude = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| err("malformed decimal"))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(magnitude, scale);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| err("not an integer, decimal or p/q"))
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= j;
    }
    Rational::from_integer(acc)
}

pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Serde adapter: a `Rational` is a `"p/q"` string on the wire.
pub mod serde_pq {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_pq(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = StrOrInt::deserialize(d)?;
        text.into_rational().map_err(de::Error::custom)
    }

    /// Config files may write small integers bare; floats are refused.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum StrOrInt {
        Str(String),
        Int(i64),
    }

    impl StrOrInt {
        pub(crate) fn into_rational(self) -> Result<Rational, ParseRationalError> {
            match self {
                StrOrInt::Str(s) => parse_rational(&s),
                StrOrInt::Int(i) => Ok(int(i)),
            }
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&fmt_pq(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<StrOrInt>::deserialize(d)?
                .map(|t| t.into_rational().map_err(de::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&fmt_pq(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<StrOrInt>::deserialize(d)?;
            raw.into_iter()
                .map(|t| t.into_rational().map_err(de::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(3, -6), rat(-1, 2));
        assert_eq!(fmt_pq(&rat(0, 5)), "0/1");
        assert_eq!(fmt_pq(&rat(-6, 4)), "-3/2");
        assert_eq!(fmt_short(&int(7)), "7");
    }

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("3/9").unwrap(), rat(1, 3));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("5.76788").unwrap(), rat(576788, 100000));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn factorial_and_pow() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(pow(&rat(2, 3), -2), rat(9, 4));
    }
}
