use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::Rational;

/// A commutative field with exact arithmetic.
///
/// Implemented for [`Rational`] and [`RatFun`](super::RatFun). Matrix code is
/// generic over this trait; the rank computation is dispatched through
/// [`Field::matrix_rank`] so each field can pick its elimination strategy.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: &Rational) -> Self;

    /// Pivot preference for elimination; lower is better. Must be finite for
    /// every nonzero element.
    fn pivot_weight(&self) -> usize {
        0
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        m.rank_by_elimination()
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn pivot_weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        super::matrix::bareiss_rank(m)
    }
}
