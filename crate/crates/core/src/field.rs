//! Base field abstraction shared by all exact coefficient domains.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

/// An exact field. Every coefficient domain in this crate (ℚ, ℚ(t),
/// residue fields) implements this; all generic polynomial and matrix
/// code is written against it.
pub trait Field:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Div<Output = Self>
{
    fn from_int(n: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Exact rational numbers; numerator/denominator are kept reduced with a
/// positive denominator by `num-rational`.
pub type Rat = BigRational;

impl Field for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}
