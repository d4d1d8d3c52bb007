//! Scalar abstraction shared by the power-series and feasibility code.
//!
//! Everything that needs field arithmetic is written against [`Scalar`] so it
//! runs both on exact rationals (the default everywhere results matter) and on
//! `f64`/`f32` for quick numerical cross-checks.

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// A totally ordered field element.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Display
{
    /// Converts an exact non-negative integer count.
    fn from_count(v: &BigUint) -> Self;

    /// `true` when arithmetic on this type is exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type represents small integers")
    }

    /// Midpoint of two values.
    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / (Self::one() + Self::one())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_count(v: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(v.clone()))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_count(v: &BigUint) -> Self {
        v.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_count(v: &BigUint) -> Self {
        v.to_f32().unwrap_or(f32::INFINITY)
    }
}
