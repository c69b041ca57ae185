//! Truncated Laurent series in q with an absolute precision.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{AlgError, Result};
use crate::exactalg::{Ring, Scalar};

/// `sum_{i} coeffs[i] q^(low+i) + O(q^prec)`.
///
/// Normalised so that the coefficient at `low` is nonzero; the zero series
/// has no coefficients and `low == prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries<C> {
    low: i64,
    prec: i64,
    coeffs: Vec<C>,
}

impl<C: Scalar> QSeries<C> {
    pub fn new(low: i64, coeffs: Vec<C>, prec: i64) -> Self {
        let mut s = QSeries { low, prec, coeffs };
        s.normalize();
        s
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats and
    /// dropping exponents at or beyond `prec`.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(it: I, prec: i64) -> Self {
        let terms: Vec<(i64, C)> = it.into_iter().filter(|(e, _)| *e < prec).collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(prec);
        };
        let mut coeffs = vec![C::zero(); (prec - low) as usize];
        for (e, c) in terms {
            let i = (e - low) as usize;
            coeffs[i] = coeffs[i].plus(&c);
        }
        Self::new(low, coeffs, prec)
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.low).max(0) as usize;
        self.coeffs.truncate(keep);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.low = self.prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.low += i as i64;
                while self.coeffs.len() < (self.prec - self.low) as usize {
                    self.coeffs.push(C::zero());
                }
            }
        }
    }

    pub fn zero(prec: i64) -> Self {
        QSeries {
            low: prec,
            prec,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: C, prec: i64) -> Self {
        Self::new(0, vec![c], prec)
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(C::one(), prec)
    }

    pub fn monomial(c: C, e: i64, prec: i64) -> Self {
        Self::from_terms([(e, c)], prec)
    }

    /// The series `q`.
    pub fn q(prec: i64) -> Self {
        Self::monomial(C::one(), 1, prec)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Exponent of the first nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }

    /// The stored lower bound: the valuation, or `prec` for zero.
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeff(&self, n: i64) -> C {
        assert!(n < self.prec, "coefficient q^{} beyond precision {}", n, self.prec);
        if n < self.low {
            C::zero()
        } else {
            self.coeffs[(n - self.low) as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// `(exponent, coefficient)` for each nonzero term.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn coeffs_from(&self, start: i64) -> Vec<C> {
        (start..self.prec).map(|n| self.coeff(n)).collect()
    }

    pub fn is_power_series(&self) -> bool {
        self.low >= 0
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let p = prec.min(self.prec);
        Self::new(self.low, self.coeffs.clone(), p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let low = self.low.min(other.low).min(prec);
        let coeffs = (low..prec)
            .map(|n| {
                let a = if n >= self.low { self.coeff(n) } else { C::zero() };
                let b = if n >= other.low { other.coeff(n) } else { C::zero() };
                a.plus(&b)
            })
            .collect();
        Self::new(low, coeffs, prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QSeries {
            low: self.low,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x.times(c)).collect(), self.prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.prec + other.low).min(other.prec + self.low);
        let low = self.low + other.low;
        if self.coeffs.is_empty() || other.coeffs.is_empty() || low >= prec {
            return Self::zero(prec);
        }
        let n = (prec - low) as usize;
        let mut coeffs = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Self::new(low, coeffs, prec)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap_or_else(|| Self::one(self.prec))
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let Some(lead) = self.leading_coeff() else {
            return Err(AlgError::DivisionByZero);
        };
        let inv0 = lead
            .try_inv()
            .ok_or_else(|| AlgError::NotUnit(format!("leading coefficient {}", lead)))?;
        let rel = self.prec - self.low;
        if rel < 1 {
            return Err(AlgError::PrecisionUnderflow(rel));
        }
        let n = rel as usize;
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut s = C::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s = s.plus(&self.coeffs[j].times(&out[k - j]));
            }
            out.push(s.times(&inv0).negate());
        }
        Ok(Self::new(-self.low, out, -self.low + rel))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Substitutes `q -> q^n` for `n >= 1`.
    pub fn compose_scale(&self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(AlgError::InvalidArgument(format!("scale factor {} < 1", n)));
        }
        let terms: Vec<(i64, C)> = self.terms().map(|(e, c)| (e * n, c.clone())).collect();
        Ok(Self::from_terms(terms, self.prec * n))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        QSeries::new(self.low, self.coeffs.iter().map(f).collect(), self.prec)
    }

    pub fn try_map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> Result<D>) -> Result<QSeries<D>> {
        let cs = self.coeffs.iter().map(f).collect::<Result<Vec<D>>>()?;
        Ok(QSeries::new(self.low, cs, self.prec))
    }

    /// Equality of all coefficients below `n` (both series must know them).
    pub fn agrees_below(&self, other: &Self, n: i64) -> bool {
        assert!(n <= self.prec && n <= other.prec, "comparison beyond precision");
        let lo = self.low.min(other.low);
        (lo..n).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// First exponent below `n` where the two series differ.
    pub fn first_difference(&self, other: &Self, n: i64) -> Option<i64> {
        let lo = self.low.min(other.low);
        (lo..n.min(self.prec).min(other.prec)).find(|&k| self.coeff(k) != other.coeff(k))
    }
}

impl<C: Scalar> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let mut s = c.to_string();
            let compound = s.contains(' ');
            let mut neg = false;
            if !compound && s.starts_with('-') {
                neg = true;
                s.remove(0);
            }
            let mono = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{}", e),
            };
            let body = match (mono.is_empty(), compound, s == "1") {
                (true, true, _) => format!("({})", s),
                (true, false, _) => s,
                (false, _, true) => mono,
                (false, true, false) => format!("({})*{}", s, mono),
                (false, false, false) => format!("{}*{}", s, mono),
            };
            match (first, neg) {
                (true, false) => write!(f, "{}", body)?,
                (true, true) => write!(f, "-{}", body)?,
                (false, false) => write!(f, " + {}", body)?,
                (false, true) => write!(f, " - {}", body)?,
            }
            first = false;
        }
        if first {
            write!(f, "O(q^{})", self.prec)
        } else {
            write!(f, " + O(q^{})", self.prec)
        }
    }
}

impl<C: Scalar> Serialize for QSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QSeries", 3)?;
        st.serialize_field("low", &self.low)?;
        st.serialize_field("prec", &self.prec)?;
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &cs)?;
        st.end()
    }
}

impl<C: Scalar> Ring for QSeries<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.prec)
    }
    fn one_like(&self) -> Self {
        Self::one(self.prec)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn int_like(&self, n: i64) -> Self {
        Self::constant(C::from_int(n), self.prec)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn pow(&self, e: u32) -> Self {
        QSeries::pow(self, e)
    }
}

crate::impl_ring_ops!(QSeries<C>, C: Scalar);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat_int, Rat};
    use proptest::prelude::*;

    fn ser(low: i64, cs: &[i64], prec: i64) -> QSeries<Rat> {
        QSeries::new(low, cs.iter().map(|&c| rat_int(c)).collect(), prec)
    }

    #[test]
    fn geometric_series() {
        let one_minus_q = ser(0, &[1, -1], 10);
        let g = one_minus_q.inverse().unwrap();
        assert_eq!(g, ser(0, &[1; 10], 10));
        assert_eq!(g.to_string(), "1 + q + q^2 + q^3 + q^4 + q^5 + q^6 + q^7 + q^8 + q^9 + O(q^10)");
    }

    #[test]
    fn derivative_of_geometric() {
        // sum l q^l = q / (1-q)^2
        let p = 12;
        let lhs = QSeries::from_terms((1..p).map(|l| (l, rat_int(l))), p);
        let den = ser(0, &[1, -1], p).pow(2);
        let rhs = QSeries::<Rat>::q(p).div(&den).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_scale_and_precision() {
        let q = QSeries::<Rat>::q(4);
        let q7 = q.compose_scale(7).unwrap();
        assert_eq!(q7.valuation(), Some(7));
        assert_eq!(q7.prec(), 28);
        // (q + O(q^4)) * (1 + O(q^3)) = q + O(q^4)
        let a = ser(1, &[1], 4);
        let b = ser(0, &[1], 3);
        assert_eq!(a.mul(&b).prec(), 4);
        let laurent = ser(-2, &[1, 1], 5);
        let inv = laurent.inverse().unwrap();
        assert_eq!(inv.valuation(), Some(2));
        assert_eq!(inv.prec(), 9);
        assert_eq!(ser(0, &[1], 3).to_string(), "1 + O(q^3)");
        assert_eq!(QSeries::<Rat>::zero(5).to_string(), "O(q^5)");
    }

    #[test]
    fn non_unit_inverse_fails() {
        let s = QSeries::<crate::exactalg::Int>::new(0, vec![2.into(), 1.into()], 4);
        assert!(matches!(s.inverse(), Err(AlgError::NotUnit(_))));
        assert!(matches!(QSeries::<Rat>::zero(3).inverse(), Err(AlgError::DivisionByZero)));
    }

    #[test]
    fn json_shape() {
        let s = ser(1, &[1, -2], 3);
        assert_eq!(
            serde_json::to_string(&s).unwrap_or_default(),
            r#"{"low":1,"prec":3,"coeffs":["1","-2"]}"#
        );
    }

    fn arb_series(prec: i64) -> impl Strategy<Value = QSeries<Rat>> {
        (0i64..3, prop::collection::vec(-6i64..7, 1..8)).prop_map(move |(low, cs)| {
            QSeries::new(low, cs.into_iter().map(rat_int).collect(), prec)
        })
    }

    proptest! {
        #[test]
        fn mul_assoc_comm(a in arb_series(12), b in arb_series(12), c in arb_series(12)) {
            let ab_c = a.mul(&b).mul(&c);
            let a_bc = a.mul(&b.mul(&c));
            let n = ab_c.prec().min(a_bc.prec());
            prop_assert!(ab_c.agrees_below(&a_bc, n));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn inverse_roundtrip(cs in prop::collection::vec(-6i64..7, 1..10), lead in prop::sample::select(vec![-3i64, -1, 1, 2, 5])) {
            let mut v = vec![rat_int(lead)];
            v.extend(cs.into_iter().map(rat_int));
            let s = QSeries::new(0, v, 15);
            let prod = s.mul(&s.inverse().unwrap());
            prop_assert_eq!(prod, QSeries::one(15));
        }
    }
}
