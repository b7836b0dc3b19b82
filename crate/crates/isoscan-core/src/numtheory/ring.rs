//! Minimal algebraic traits shared by `F_q` elements and rationals.

use core::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use num_traits::{One, Zero};

/// A commutative ring whose elements can build constants of their own ring.
///
/// Field elements carry their field context, so constants are created
/// relative to an existing element instead of from nothing.
pub trait Ring:
    Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, k: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
}

pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn int_like(&self, k: i64) -> Self {
        Rational::from_integer(k.into())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
