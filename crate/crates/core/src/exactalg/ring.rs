//! Ring abstractions shared by scalars, polynomials and truncated series.
//!
//! `Ring` is deliberately context-free at the value level: polynomials need
//! their generator list and series their precision, so zero and one are
//! produced "like" an existing value. `Scalar` adds the context-free
//! constructors that coefficient rings can offer.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;

pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Image of the integer `n` in the ring of `self`.
    fn int_like(&self, n: i64) -> Self;
    /// Multiplicative inverse when `self` is a unit.
    fn try_inv(&self) -> Option<Self>;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// `self * a / b` for small integers, failing when `b` is not a unit.
    fn scale_ratio(&self, a: i64, b: i64) -> Option<Self> {
        let inv = self.int_like(b).try_inv()?;
        Some(self.times(&self.int_like(a)).times(&inv))
    }
}

/// A coefficient ring with context-free constants.
pub trait Scalar: Ring + Eq {
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    /// Embeds a rational number, failing when its denominator is not
    /// invertible in this ring.
    fn from_rational(r: &BigRational) -> Result<Self>;
}

/// Implements the `std::ops` arithmetic traits by delegating to [`Ring`].
#[macro_export]
macro_rules! impl_ring_ops {
    ($t:ty $(, $g:ident : $b:path)?) => {
        impl$(<$g: $b>)? ::std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::exactalg::Ring::plus(&self, &rhs)
            }
        }
        impl<'a $(, $g: $b)?> ::std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                $crate::exactalg::Ring::plus(self, rhs)
            }
        }
        impl$(<$g: $b>)? ::std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::exactalg::Ring::minus(&self, &rhs)
            }
        }
        impl<'a $(, $g: $b)?> ::std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                $crate::exactalg::Ring::minus(self, rhs)
            }
        }
        impl$(<$g: $b>)? ::std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::exactalg::Ring::times(&self, &rhs)
            }
        }
        impl<'a $(, $g: $b)?> ::std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                $crate::exactalg::Ring::times(self, rhs)
            }
        }
        impl$(<$g: $b>)? ::std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exactalg::Ring::negate(&self)
            }
        }
        impl<'a $(, $g: $b)?> ::std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exactalg::Ring::negate(self)
            }
        }
    };
}
