//! Scalar abstraction shared by every computation in the crate.
//!
//! All bound and channel routines are written against [`Scalar`] so the same
//! code runs on exact rationals (the reference path, where every comparison
//! in the bounds is decided exactly) and on `f32`/`f64` for quick
//! approximate evaluation.

use std::f64::consts::LN_2;
use std::fmt::{Debug, Display};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Numeric type usable as a probability carrier.
pub trait Scalar:
    Num + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// `true` when arithmetic and comparisons are exact.
    const EXACT: bool;

    /// Converts an exact rational into this scalar (rounding for floats).
    fn from_rational(r: &BigRational) -> Self;

    /// Converts a nonnegative integer count into this scalar.
    fn from_count(n: u128) -> Self;

    /// Display-only decimal approximation.
    fn approx(&self) -> f64;

    /// Natural logarithm as `f64`; `-inf` at zero, `NaN` for negative input.
    fn ln(&self) -> f64;

    /// Equality up to the type's rounding noise (exact types use `==`).
    fn approx_eq(&self, other: &Self) -> bool;

    fn from_ratio(num: u64, den: u64) -> Self {
        Self::from_count(num as u128) / Self::from_count(den as u128)
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(r: &BigRational) -> Self {
                ToPrimitive::to_f64(r).unwrap_or(f64::NAN) as $t
            }

            fn from_count(n: u128) -> Self {
                n as $t
            }

            fn approx(&self) -> f64 {
                *self as f64
            }

            fn ln(&self) -> f64 {
                (*self as f64).ln()
            }

            fn approx_eq(&self, other: &Self) -> bool {
                (self - other).abs() <= $tol * self.abs().max(other.abs()).max(1.0)
            }
        }
    };
}

float_scalar!(f32, 1e-5);
float_scalar!(f64, 1e-10);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_count(n: u128) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn approx(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| Scalar::ln(self).exp())
    }

    fn ln(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        if self.is_negative() {
            return f64::NAN;
        }
        ln_biguint(self.numer().magnitude()) - ln_biguint(self.denom().magnitude())
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

/// `ln(x)` for arbitrarily large integers, keeping the top 64 bits.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).ln() + shift as f64 * LN_2
}

/// Exact rational from a pair of machine integers.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `num/den`, or as a bare integer when `den == 1`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
