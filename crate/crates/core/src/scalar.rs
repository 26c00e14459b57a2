//! Exact scalar arithmetic shared by the bound evaluators.
//!
//! Every closed-form bound is evaluated as a `Ratio<I>` for an integer type
//! `I`. `BigInt` is the default (see [`crate::Rational`]); fixed-width
//! integers work too when the caller knows the values stay small.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer types usable as the numerator/denominator of exact bounds.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

/// Lifts a machine integer into `I`.
///
/// # Panics
/// If the value does not fit in `I`.
pub fn int<I: ExactInt>(v: i64) -> I {
    I::from_i64(v).expect("integer does not fit in the scalar type")
}

pub fn ratio<I: ExactInt>(num: i64, den: i64) -> Ratio<I> {
    Ratio::new(int(num), int(den))
}

/// `ceil(a / b)` for `b > 0`, computed as `-floor(-a / b)`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    assert!(b > 0, "ceil_div requires a positive divisor");
    -((-a).div_euclid(b))
}

/// `ceil(q)` for an exact rational.
pub fn ceil<I: ExactInt>(q: &Ratio<I>) -> I {
    q.ceil().to_integer()
}

/// Serialises a ratio as the string `"num/den"` (or `"num"` for integers).
pub fn serialize_ratio<I: ExactInt, S: serde::Serializer>(q: &Ratio<I>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}
