use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Scalar};

/// A value in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct Probability<T>(T);

impl<T: Scalar> Probability<T> {
    pub fn new(value: T) -> Result<Self> {
        if value < T::zero() || value > T::one() {
            return Err(Error::OutOfRange(value.to_string()));
        }
        Ok(Self(value))
    }

    /// Wraps a value produced by this crate's own arithmetic. Float rounding
    /// may push such values a hair outside `[0, 1]`; they are clamped.
    pub(crate) fn from_computed(value: T) -> Self {
        debug_assert!(
            !T::EXACT || (value >= T::zero() && value <= T::one()),
            "exact probability out of range: {value}"
        );
        if value < T::zero() {
            Self(T::zero())
        } else if value > T::one() {
            Self(T::one())
        } else {
            Self(value)
        }
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    pub fn one() -> Self {
        Self(T::one())
    }

    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn into_inner(self) -> T {
        self.0
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        Self(T::one() - self.0.clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.approx()
    }
}

impl Probability<BigRational> {
    /// Parses `num/den` or an exact decimal such as `0.25`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }
}

impl FromStr for Probability<BigRational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for Probability<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for Probability<BigRational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

/// Parses an exact rational literal: `num/den` (decimal integers, `den > 0`)
/// or a plain decimal (`-1`, `0.25`, `.5`). Exponent notation, `inf` and
/// `nan` are rejected since they do not denote exact decimals.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = parse_integer(num.trim()).ok_or_else(err)?;
        let den: BigInt = parse_integer(den.trim()).ok_or_else(err)?;
        if den <= BigInt::zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&digits).map_err(|_| err())?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

pub(crate) fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}

pub(crate) fn is_one<T: Scalar>(v: &T) -> bool {
    if T::EXACT {
        v.is_one()
    } else {
        v.approx_eq(&T::one())
    }
}
