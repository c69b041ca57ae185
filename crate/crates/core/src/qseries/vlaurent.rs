//! Coefficients in the auxiliary variable v: Laurent polynomials, and the
//! localisation at (1 - v) and (1 + v) needed for the torsion-point series.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{AlgError, Result};
use crate::exactalg::{rat_int, Rat, Ring, Scalar};

/// A Laurent polynomial in v with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VLaurent {
    terms: BTreeMap<i64, Rat>,
}

impl VLaurent {
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(it: I) -> Self {
        let mut out = VLaurent::default();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        Self::from_terms([(e, c)])
    }

    /// The variable v.
    pub fn v() -> Self {
        Self::monomial(rat_int(1), 1)
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if Ring::is_zero(&c) {
            return;
        }
        let s = self.terms.get(&e).map_or(c.clone(), |o| o + &c);
        if Ring::is_zero(&s) {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, e))` when `self = c v^e`.
    pub fn as_monomial(&self) -> Option<(Rat, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn eval(&self, v: &Rat) -> Result<Rat> {
        let mut acc = rat_int(0);
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                Ring::pow(v, *e as u32)
            } else {
                Ring::pow(&v.try_inv().ok_or(AlgError::DivisionByZero)?, (-*e) as u32)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Substitutes v -> 1/v.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (-e, c.clone())))
    }

    /// Exact quotient by `(1 - v)` (when `sign = -1`) or `(1 + v)` (when
    /// `sign = 1`), if it exists.
    fn divide_linear(&self, sign: i64) -> Option<Self> {
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        // P(v) = v^-lo * self, a polynomial; divide P by (v - root).
        let root = rat_int(-sign);
        let coeffs: Vec<Rat> = (lo..=hi).map(|e| self.coeff(e)).collect();
        let deg = coeffs.len() - 1;
        if deg == 0 {
            return None;
        }
        // synthetic division from the top
        let mut quot = vec![rat_int(0); deg];
        let mut carry = rat_int(0);
        for i in (1..=deg).rev() {
            carry = &coeffs[i] + &carry * &root;
            quot[i - 1] = carry.clone();
        }
        let rem = &coeffs[0] + &carry * &root;
        if !Ring::is_zero(&rem) {
            return None;
        }
        // P = (v - root) Q. For 1 - v = -(v - 1) flip the sign.
        let flip = if sign == -1 { rat_int(-1) } else { rat_int(1) };
        Some(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (lo + i as i64, c * &flip)),
        ))
    }

    fn one_plus_sign_v(sign: i64) -> Self {
        Self::from_terms([(0, rat_int(1)), (1, rat_int(sign))])
    }
}

impl fmt::Display for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &rat_int(0);
            let a = if neg { -c } else { c.clone() };
            let mono = match e {
                0 => String::new(),
                1 => "v".into(),
                _ => format!("v^{}", e),
            };
            let body = if mono.is_empty() {
                a.to_string()
            } else if a == rat_int(1) {
                mono
            } else {
                format!("{}*{}", a, mono)
            };
            match (idx, neg) {
                (0, false) => write!(f, "{}", body)?,
                (0, true) => write!(f, "-{}", body)?,
                (_, false) => write!(f, " + {}", body)?,
                (_, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}

impl Ring for VLaurent {
    fn zero_like(&self) -> Self {
        VLaurent::default()
    }
    fn one_like(&self) -> Self {
        VLaurent::monomial(rat_int(1), 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = VLaurent::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, -c)))
    }
    fn int_like(&self, n: i64) -> Self {
        Self::monomial(rat_int(n), 0)
    }
    fn try_inv(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.try_inv()?, -e))
    }
}

impl Scalar for VLaurent {
    const NAME: &'static str = "VLaurent";
    fn zero() -> Self {
        VLaurent::default()
    }
    fn one() -> Self {
        VLaurent::monomial(rat_int(1), 0)
    }
    fn from_int(n: i64) -> Self {
        VLaurent::monomial(rat_int(n), 0)
    }
    fn from_bigint(n: &BigInt) -> Self {
        VLaurent::monomial(BigRational::from_integer(n.clone()), 0)
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        Ok(VLaurent::monomial(r.clone(), 0))
    }
}

crate::impl_ring_ops!(VLaurent);

/// `num * (1 - v)^e_minus * (1 + v)^e_plus` with `num` a Laurent polynomial
/// prime to both `1 - v` and `1 + v`. Zero is `num = 0`, exponents 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VFrac {
    num: VLaurent,
    e_minus: i64,
    e_plus: i64,
}

impl VFrac {
    pub fn new(num: VLaurent, e_minus: i64, e_plus: i64) -> Self {
        let mut f = VFrac {
            num,
            e_minus,
            e_plus,
        };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.e_minus = 0;
            self.e_plus = 0;
            return;
        }
        while let Some(q) = self.num.divide_linear(-1) {
            self.num = q;
            self.e_minus += 1;
        }
        while let Some(q) = self.num.divide_linear(1) {
            self.num = q;
            self.e_plus += 1;
        }
    }

    pub fn v() -> Self {
        VLaurent::v().into()
    }

    /// `(1 - v)^k` for any integer k.
    pub fn one_minus_v_pow(k: i64) -> Self {
        VFrac::new(VLaurent::one(), k, 0)
    }

    pub fn numerator(&self) -> &VLaurent {
        &self.num
    }

    pub fn exponents(&self) -> (i64, i64) {
        (self.e_minus, self.e_plus)
    }

    /// The Laurent polynomial, when there is no denominator.
    pub fn as_laurent(&self) -> Option<VLaurent> {
        if self.e_minus < 0 || self.e_plus < 0 {
            return None;
        }
        let f = VLaurent::one_plus_sign_v(-1).pow(self.e_minus as u32);
        let g = VLaurent::one_plus_sign_v(1).pow(self.e_plus as u32);
        Some(self.num.times(&f).times(&g))
    }

    /// Value at a rational point where the expression is defined.
    pub fn eval(&self, v: &Rat) -> Result<Rat> {
        let n = self.num.eval(v)?;
        let a = pow_signed(&(rat_int(1) - v), self.e_minus)?;
        let b = pow_signed(&(rat_int(1) + v), self.e_plus)?;
        Ok(n * a * b)
    }

    /// Substitutes v -> 1/v.
    pub fn invert_variable(&self) -> Self {
        // 1 - 1/v = -(1 - v) v^-1 and 1 + 1/v = (1 + v) v^-1
        let sign = if self.e_minus % 2 == 0 { 1 } else { -1 };
        let shift = -(self.e_minus + self.e_plus);
        let num = self
            .num
            .invert_variable()
            .times(&VLaurent::monomial(rat_int(sign), shift));
        VFrac::new(num, self.e_minus, self.e_plus)
    }

    fn scaled_num(&self, e_minus: i64, e_plus: i64) -> VLaurent {
        let f = VLaurent::one_plus_sign_v(-1).pow((self.e_minus - e_minus) as u32);
        let g = VLaurent::one_plus_sign_v(1).pow((self.e_plus - e_plus) as u32);
        self.num.times(&f).times(&g)
    }
}

fn pow_signed<T: Ring>(x: &T, e: i64) -> Result<T> {
    if e >= 0 {
        Ok(x.pow(e as u32))
    } else {
        let inv = x.try_inv().ok_or_else(|| AlgError::NotUnit(x.to_string()))?;
        Ok(inv.pow((-e) as u32))
    }
}

impl From<VLaurent> for VFrac {
    fn from(num: VLaurent) -> Self {
        VFrac::new(num, 0, 0)
    }
}

impl fmt::Display for VFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num_factors = Vec::new();
        let mut den_factors = Vec::new();
        let factor = |name: &str, e: i64| -> String {
            if e == 1 {
                format!("({})", name)
            } else {
                format!("({})^{}", name, e)
            }
        };
        if self.e_minus > 0 {
            num_factors.push(factor("1 - v", self.e_minus));
        } else if self.e_minus < 0 {
            den_factors.push(factor("1 - v", -self.e_minus));
        }
        if self.e_plus > 0 {
            num_factors.push(factor("1 + v", self.e_plus));
        } else if self.e_plus < 0 {
            den_factors.push(factor("1 + v", -self.e_plus));
        }
        let n = self.num.to_string();
        let top = if num_factors.is_empty() {
            n
        } else {
            let base = if self.num.as_monomial().is_some() && !n.contains(' ') {
                n
            } else {
                format!("({})", n)
            };
            if base == "1" {
                num_factors.join("*")
            } else {
                format!("{}*{}", base, num_factors.join("*"))
            }
        };
        if den_factors.is_empty() {
            write!(f, "{}", top)
        } else {
            let top = if top.contains(' ') && num_factors.is_empty() {
                format!("({})", top)
            } else {
                top
            };
            write!(f, "{}/{}", top, den_factors.join("*"))
        }
    }
}

impl Ring for VFrac {
    fn zero_like(&self) -> Self {
        VFrac::default()
    }
    fn one_like(&self) -> Self {
        VLaurent::one().into()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let em = self.e_minus.min(rhs.e_minus);
        let ep = self.e_plus.min(rhs.e_plus);
        VFrac::new(self.scaled_num(em, ep).plus(&rhs.scaled_num(em, ep)), em, ep)
    }
    fn times(&self, rhs: &Self) -> Self {
        VFrac::new(
            self.num.times(&rhs.num),
            self.e_minus + rhs.e_minus,
            self.e_plus + rhs.e_plus,
        )
    }
    fn negate(&self) -> Self {
        VFrac {
            num: self.num.negate(),
            e_minus: self.e_minus,
            e_plus: self.e_plus,
        }
    }
    fn int_like(&self, n: i64) -> Self {
        VLaurent::from_int(n).into()
    }
    fn try_inv(&self) -> Option<Self> {
        Some(VFrac {
            num: self.num.try_inv()?,
            e_minus: -self.e_minus,
            e_plus: -self.e_plus,
        })
    }
}

impl Scalar for VFrac {
    const NAME: &'static str = "VFrac";
    fn zero() -> Self {
        VFrac::default()
    }
    fn one() -> Self {
        VLaurent::one().into()
    }
    fn from_int(n: i64) -> Self {
        VLaurent::from_int(n).into()
    }
    fn from_bigint(n: &BigInt) -> Self {
        VLaurent::from_bigint(n).into()
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        Ok(VLaurent::monomial(r.clone(), 0).into())
    }
}

crate::impl_ring_ops!(VFrac);

impl Serialize for VLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for VFrac {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Ring as R};
    use proptest::prelude::*;

    fn lp(ts: &[(i64, i64)]) -> VLaurent {
        VLaurent::from_terms(ts.iter().map(|(e, c)| (*e, rat_int(*c))))
    }

    #[test]
    fn normal_form_extracts_factors() {
        // v + v^2 = v (1 + v)
        let f = VFrac::from(lp(&[(1, 1), (2, 1)]));
        assert_eq!(f.exponents(), (0, 1));
        assert_eq!(f.numerator(), &lp(&[(1, 1)]));
        // v - v^-1 = -v^-1 (1 - v)(1 + v)
        let g = VFrac::from(lp(&[(1, 1), (-1, -1)]));
        assert_eq!(g.exponents(), (1, 1));
        assert_eq!(g.numerator(), &lp(&[(-1, -1)]));
        assert!(R::try_inv(&g).is_some());
        assert!(R::try_inv(&VFrac::from(lp(&[(0, 1), (2, 1)]))).is_none());
    }

    #[test]
    fn display_forms() {
        let x = VFrac::v().times(&VFrac::one_minus_v_pow(-2));
        assert_eq!(x.to_string(), "v/(1 - v)^2");
        let y = VFrac::from(lp(&[(1, 1), (2, 1)])).times(&VFrac::one_minus_v_pow(-3));
        assert_eq!(y.to_string(), "v*(1 + v)/(1 - v)^3");
        assert_eq!(VFrac::from(lp(&[(1, 1), (-1, 1)])).to_string(), "v + v^-1");
    }

    #[test]
    fn geometric_identity() {
        // sum_{l>=1} l v^l = v/(1-v)^2 checked through (1-v)^2 * partial sums
        let target = VFrac::v().times(&VFrac::one_minus_v_pow(-2));
        let back = target.times(&VFrac::one_minus_v_pow(2));
        assert_eq!(back, VFrac::v());
        assert_eq!(target.eval(&rat(1, 2)).unwrap(), rat(2, 1));
    }

    fn arb_lp() -> impl Strategy<Value = VLaurent> {
        prop::collection::vec((-3i64..4, -4i64..5), 0..5)
            .prop_map(|ts| VLaurent::from_terms(ts.into_iter().map(|(e, c)| (e, rat_int(c)))))
    }

    proptest! {
        #[test]
        fn vfrac_matches_evaluation(a in arb_lp(), b in arb_lp(), ea in -2i64..3, eb in -2i64..3) {
            let x = VFrac::new(a.clone(), ea, 0);
            let y = VFrac::new(b.clone(), 0, eb);
            let pt = rat(2, 5);
            let xv = x.eval(&pt).unwrap();
            let yv = y.eval(&pt).unwrap();
            prop_assert_eq!(R::plus(&x, &y).eval(&pt).unwrap(), &xv + &yv);
            prop_assert_eq!(R::times(&x, &y).eval(&pt).unwrap(), &xv * &yv);
            prop_assert_eq!(x.invert_variable().eval(&pt).unwrap(), x.eval(&R::try_inv(&pt).unwrap()).unwrap());
        }
    }
}
