//! A dynamically tagged coefficient, for callers that pick the ring at run time.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ring::{Ring, Scalar};
use super::scalars::{CycQ6, Gf3, Loc3};
use crate::error::{AlgError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coef {
    Int(BigInt),
    Rat(BigRational),
    GF3(Gf3),
    Loc3(Loc3),
    CycQ6(CycQ6),
}

impl Coef {
    pub fn ring_name(&self) -> &'static str {
        match self {
            Coef::Int(_) => BigInt::NAME,
            Coef::Rat(_) => BigRational::NAME,
            Coef::GF3(_) => Gf3::NAME,
            Coef::Loc3(_) => Loc3::NAME,
            Coef::CycQ6(_) => CycQ6::NAME,
        }
    }

    fn mismatch(&self, other: &Coef) -> AlgError {
        AlgError::CoefMismatch {
            left: self.ring_name(),
            right: other.ring_name(),
        }
    }

    pub fn try_add(&self, other: &Coef) -> Result<Coef> {
        Ok(match (self, other) {
            (Coef::Int(a), Coef::Int(b)) => Coef::Int(a + b),
            (Coef::Rat(a), Coef::Rat(b)) => Coef::Rat(a + b),
            (Coef::GF3(a), Coef::GF3(b)) => Coef::GF3(a.plus(b)),
            (Coef::Loc3(a), Coef::Loc3(b)) => Coef::Loc3(a.plus(b)),
            (Coef::CycQ6(a), Coef::CycQ6(b)) => Coef::CycQ6(a.plus(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn try_mul(&self, other: &Coef) -> Result<Coef> {
        Ok(match (self, other) {
            (Coef::Int(a), Coef::Int(b)) => Coef::Int(a * b),
            (Coef::Rat(a), Coef::Rat(b)) => Coef::Rat(a * b),
            (Coef::GF3(a), Coef::GF3(b)) => Coef::GF3(a.times(b)),
            (Coef::Loc3(a), Coef::Loc3(b)) => Coef::Loc3(a.times(b)),
            (Coef::CycQ6(a), Coef::CycQ6(b)) => Coef::CycQ6(a.times(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn neg(&self) -> Coef {
        match self {
            Coef::Int(a) => Coef::Int(-a),
            Coef::Rat(a) => Coef::Rat(-a),
            Coef::GF3(a) => Coef::GF3(a.negate()),
            Coef::Loc3(a) => Coef::Loc3(a.negate()),
            Coef::CycQ6(a) => Coef::CycQ6(a.negate()),
        }
    }

    pub fn pow(&self, e: u32) -> Coef {
        match self {
            Coef::Int(a) => Coef::Int(a.pow(e)),
            Coef::Rat(a) => Coef::Rat(Ring::pow(a, e)),
            Coef::GF3(a) => Coef::GF3(a.pow(e)),
            Coef::Loc3(a) => Coef::Loc3(a.pow(e)),
            Coef::CycQ6(a) => Coef::CycQ6(a.pow(e)),
        }
    }

    /// Division, failing for non-units (for Loc3 this is where a factor of 3
    /// would otherwise enter a denominator).
    pub fn try_div(&self, other: &Coef) -> Result<Coef> {
        let inv = match other {
            Coef::Int(b) => b.try_inv().map(Coef::Int),
            Coef::Rat(b) => b.try_inv().map(Coef::Rat),
            Coef::GF3(b) => b.try_inv().map(Coef::GF3),
            Coef::Loc3(b) => b.try_inv().map(Coef::Loc3),
            Coef::CycQ6(b) => b.try_inv().map(Coef::CycQ6),
        };
        match inv {
            Some(i) => self.try_mul(&i),
            None if other.is_zero() => Err(AlgError::DivisionByZero),
            None => Err(AlgError::NotUnit(other.to_string())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Int(a) => Ring::is_zero(a),
            Coef::Rat(a) => Ring::is_zero(a),
            Coef::GF3(a) => a.is_zero(),
            Coef::Loc3(a) => a.is_zero(),
            Coef::CycQ6(a) => a.is_zero(),
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Int(a) => write!(f, "{}", a),
            Coef::Rat(a) => write!(f, "{}", a),
            Coef::GF3(a) => write!(f, "{}", a),
            Coef::Loc3(a) => write!(f, "{}", a),
            Coef::CycQ6(a) => write!(f, "{}", a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalars::rat;

    #[test]
    fn tagged_arithmetic() {
        let z = Coef::CycQ6(CycQ6::zeta());
        assert_eq!(z.try_mul(&z).unwrap(), Coef::CycQ6(CycQ6::from_ints(-1, 1)));
        assert_eq!(z.pow(3), Coef::CycQ6(CycQ6::from_ints(-1, 0)));
        let two = Coef::Int(BigInt::from(2));
        assert!(two.try_add(&z).is_err());
        let l = Coef::Loc3(Loc3::new(rat(1, 2)).unwrap());
        assert!(l.try_div(&Coef::Loc3(Loc3::from_int(3))).is_err());
        assert_eq!(
            l.try_div(&Coef::Loc3(Loc3::from_int(2))).unwrap(),
            Coef::Loc3(Loc3::new(rat(1, 4)).unwrap())
        );
    }
}
