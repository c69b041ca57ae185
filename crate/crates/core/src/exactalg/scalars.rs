//! The five exact coefficient rings: Z, Q, GF(3), Z_(3) and Q(zeta6).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use super::ring::{Ring, Scalar};
use crate::error::{AlgError, Result};
use crate::impl_ring_ops;

fn rzero(x: &BigRational) -> bool {
    num_traits::Zero::is_zero(x)
}

fn rone(x: &BigRational) -> bool {
    num_traits::One::is_one(x)
}

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn divisible_by_3(n: &BigInt) -> bool {
    num_traits::Zero::is_zero(&(n % BigInt::from(3)))
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::from(0)
    }
    fn one_like(&self) -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn try_inv(&self) -> Option<Self> {
        if num_traits::One::is_one(&self.abs()) {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Scalar for BigInt {
    const NAME: &'static str = "Int";
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(AlgError::NotIntegral(r.to_string()))
        }
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        rat_int(0)
    }
    fn one_like(&self) -> Self {
        rat_int(1)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn int_like(&self, n: i64) -> Self {
        rat_int(n)
    }
    fn try_inv(&self) -> Option<Self> {
        if rzero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for BigRational {
    const NAME: &'static str = "Rat";
    fn zero() -> Self {
        rat_int(0)
    }
    fn one() -> Self {
        rat_int(1)
    }
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        Ok(r.clone())
    }
}

/// Residue class modulo 3, stored as 0, 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf3(u8);

impl Gf3 {
    pub fn new(n: i64) -> Self {
        Gf3(n.rem_euclid(3) as u8)
    }
    pub fn value(self) -> u8 {
        self.0
    }
    pub fn from_big(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(3));
        Gf3(r.to_u8().unwrap_or(0))
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Gf3 {
    fn zero_like(&self) -> Self {
        Gf3(0)
    }
    fn one_like(&self) -> Self {
        Gf3(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        Gf3((self.0 + rhs.0) % 3)
    }
    fn times(&self, rhs: &Self) -> Self {
        Gf3((self.0 * rhs.0) % 3)
    }
    fn negate(&self) -> Self {
        Gf3((3 - self.0) % 3)
    }
    fn int_like(&self, n: i64) -> Self {
        Gf3::new(n)
    }
    fn try_inv(&self) -> Option<Self> {
        // 1 and 2 are their own inverses.
        if self.0 == 0 {
            None
        } else {
            Some(*self)
        }
    }
}

impl Scalar for Gf3 {
    const NAME: &'static str = "GF3";
    fn zero() -> Self {
        Gf3(0)
    }
    fn one() -> Self {
        Gf3(1)
    }
    fn from_int(n: i64) -> Self {
        Gf3::new(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        Gf3::from_big(n)
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        let d = Gf3::from_big(r.denom());
        match d.try_inv() {
            Some(inv) => Ok(Gf3::from_big(r.numer()).times(&inv)),
            None => Err(AlgError::NotThreeLocal(r.to_string())),
        }
    }
}

impl_ring_ops!(Gf3);

/// A rational number whose denominator is prime to 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loc3(BigRational);

impl Loc3 {
    pub fn new(r: BigRational) -> Result<Self> {
        if divisible_by_3(r.denom()) {
            Err(AlgError::NotThreeLocal(r.to_string()))
        } else {
            Ok(Loc3(r))
        }
    }
    pub fn value(&self) -> &BigRational {
        &self.0
    }
    pub fn into_inner(self) -> BigRational {
        self.0
    }
    /// Reduction modulo the maximal ideal (3).
    pub fn reduce(&self) -> Gf3 {
        Gf3::from_rational(&self.0).expect("Loc3 invariant")
    }
    pub fn is_unit(&self) -> bool {
        !rzero(&self.0) && !divisible_by_3(self.0.numer())
    }
}

impl fmt::Display for Loc3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Loc3 {
    fn zero_like(&self) -> Self {
        Loc3(rat_int(0))
    }
    fn one_like(&self) -> Self {
        Loc3(rat_int(1))
    }
    fn is_zero(&self) -> bool {
        rzero(&self.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Loc3(&self.0 + &rhs.0)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Loc3(&self.0 - &rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        Loc3(&self.0 * &rhs.0)
    }
    fn negate(&self) -> Self {
        Loc3(-&self.0)
    }
    fn int_like(&self, n: i64) -> Self {
        Loc3(rat_int(n))
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_unit() {
            Some(Loc3(self.0.recip()))
        } else {
            None
        }
    }
}

impl Scalar for Loc3 {
    const NAME: &'static str = "Loc3";
    fn zero() -> Self {
        Loc3(rat_int(0))
    }
    fn one() -> Self {
        Loc3(rat_int(1))
    }
    fn from_int(n: i64) -> Self {
        Loc3(rat_int(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        Loc3(BigRational::from_integer(n.clone()))
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        Loc3::new(r.clone())
    }
}

impl_ring_ops!(Loc3);

/// `a + b*zeta6` with `zeta6^2 = zeta6 - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycQ6 {
    pub a: BigRational,
    pub b: BigRational,
}

impl CycQ6 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        CycQ6 { a, b }
    }
    pub fn from_ints(a: i64, b: i64) -> Self {
        CycQ6::new(rat_int(a), rat_int(b))
    }
    pub fn zeta() -> Self {
        CycQ6::from_ints(0, 1)
    }
    pub fn is_rational(&self) -> bool {
        rzero(&self.b)
    }
    /// Field norm `a^2 + ab + b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }
    /// Galois conjugate, sending zeta6 to 1 - zeta6.
    pub fn conj(&self) -> Self {
        CycQ6::new(&self.a + &self.b, -&self.b)
    }
    pub fn scale(&self, c: &BigRational) -> Self {
        CycQ6::new(&self.a * c, &self.b * c)
    }
}

impl Default for CycQ6 {
    fn default() -> Self {
        CycQ6::from_ints(0, 0)
    }
}

impl From<BigRational> for CycQ6 {
    fn from(a: BigRational) -> Self {
        CycQ6::new(a, rat_int(0))
    }
}

impl fmt::Display for CycQ6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zb = rzero(&self.b);
        let za = rzero(&self.a);
        let zeta_part = |b: &BigRational| -> String {
            if rone(b) {
                "zeta6".to_string()
            } else {
                format!("{}*zeta6", b)
            }
        };
        match (za, zb) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => {
                if rone(&-&self.b) {
                    write!(f, "-zeta6")
                } else {
                    write!(f, "{}", zeta_part(&self.b))
                }
            }
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}", self.a, zeta_part(&-&self.b))
                } else {
                    write!(f, "{} + {}", self.a, zeta_part(&self.b))
                }
            }
        }
    }
}

impl Ring for CycQ6 {
    fn zero_like(&self) -> Self {
        CycQ6::from_ints(0, 0)
    }
    fn one_like(&self) -> Self {
        CycQ6::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        rzero(&self.a) && rzero(&self.b)
    }
    fn plus(&self, rhs: &Self) -> Self {
        CycQ6::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
    fn minus(&self, rhs: &Self) -> Self {
        CycQ6::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
    fn times(&self, rhs: &Self) -> Self {
        let bd = &self.b * &rhs.b;
        CycQ6::new(
            &self.a * &rhs.a - &bd,
            &self.a * &rhs.b + &self.b * &rhs.a + bd,
        )
    }
    fn negate(&self) -> Self {
        CycQ6::new(-&self.a, -&self.b)
    }
    fn int_like(&self, n: i64) -> Self {
        CycQ6::from_ints(n, 0)
    }
    fn try_inv(&self) -> Option<Self> {
        let n = self.norm();
        if rzero(&n) {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }
}

impl Scalar for CycQ6 {
    const NAME: &'static str = "CycQ6";
    fn zero() -> Self {
        CycQ6::from_ints(0, 0)
    }
    fn one() -> Self {
        CycQ6::from_ints(1, 0)
    }
    fn from_int(n: i64) -> Self {
        CycQ6::from_ints(n, 0)
    }
    fn from_bigint(n: &BigInt) -> Self {
        CycQ6::from(BigRational::from_integer(n.clone()))
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        Ok(CycQ6::from(r.clone()))
    }
}

impl_ring_ops!(CycQ6);

macro_rules! serialize_via_display {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
    )*};
}
serialize_via_display!(Gf3, Loc3, CycQ6);
