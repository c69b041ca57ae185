//! Sparse multivariate polynomials over named, weighted generators.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::ring::{Ring, Scalar};
use crate::error::{AlgError, Result};

/// An ordered list of generators with their grading weights.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Vars {
    names: Vec<String>,
    weights: Vec<i64>,
}

impl Vars {
    pub fn new(spec: &[(&str, i64)]) -> Arc<Vars> {
        Arc::new(Vars {
            names: spec.iter().map(|(n, _)| n.to_string()).collect(),
            weights: spec.iter().map(|(_, w)| *w).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn listing(&self) -> String {
        self.names.join(", ")
    }

    pub fn weight_of(&self, exps: &[u32]) -> i64 {
        exps.iter()
            .zip(&self.weights)
            .map(|(e, w)| *e as i64 * w)
            .sum()
    }
}

fn same_vars(a: &Arc<Vars>, b: &Arc<Vars>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Debug)]
pub struct MultiPoly<C> {
    vars: Arc<Vars>,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Scalar> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<C: Scalar> Eq for MultiPoly<C> {}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(vars: &Arc<Vars>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Vars>, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &Arc<Vars>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn from_int(vars: &Arc<Vars>, n: i64) -> Self {
        Self::constant(vars, C::from_int(n))
    }

    /// The `i`-th generator.
    pub fn gen(vars: &Arc<Vars>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, C::one())
    }

    pub fn var(vars: &Arc<Vars>, name: &str) -> Result<Self> {
        let i = vars
            .index(name)
            .ok_or_else(|| AlgError::ForeignGenerator(name.to_string(), vars.listing()))?;
        Ok(Self::gen(vars, i))
    }

    pub fn gens(vars: &Arc<Vars>) -> Vec<Self> {
        (0..vars.len()).map(|i| Self::gen(vars, i)).collect()
    }

    pub fn monomial(vars: &Arc<Vars>, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, C)>>(vars: &Arc<Vars>, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Vec<u32>, C> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_coeff(&self) -> C {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|x| *x == 0))
    }

    /// Weighted degrees occurring in `self`.
    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|e| self.vars.weight_of(e)).collect()
    }

    /// True when every term has weighted degree `d` (vacuous for zero).
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|e| self.vars.weight_of(e) == d)
    }

    pub fn homogeneous_degree(&self) -> Option<i64> {
        let ds = self.degrees();
        if ds.len() == 1 {
            ds.into_iter().next()
        } else {
            None
        }
    }

    pub fn homogeneous_part(&self, d: i64) -> Self {
        let vars = self.vars.clone();
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.weight_of(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            vars,
        }
    }

    pub fn max_exp(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(AlgError::GeneratorMismatch {
                left: self.vars.listing(),
                right: other.vars.listing(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negate())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.terms.is_empty() || other.terms.is_empty() {
            return Ok(Self::zero(&self.vars));
        }
        let mut acc: HashMap<Vec<u32>, C> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.times(c2);
                match acc.get_mut(&e) {
                    Some(old) => *old = old.plus(&c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.times(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(&self.vars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> Result<D>) -> Result<MultiPoly<D>> {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Evaluates the polynomial with generator `i` sent to `images[i]`.
    pub fn eval<T: Ring>(&self, images: &[T], one: &T, embed: impl Fn(&C) -> T) -> T {
        assert_eq!(images.len(), self.vars.len(), "one image per generator");
        let mut powers: Vec<Vec<T>> = images.iter().map(|_| vec![one.clone()]).collect();
        let mut acc = one.zero_like();
        for (e, c) in &self.terms {
            let mut t = embed(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().times(&images[i]);
                    powers[i].push(next);
                }
                t = t.times(&powers[i][k as usize]);
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Ring map into polynomials over `target`, sending each generator to a
    /// polynomial there.
    pub fn substitute(&self, images: &[MultiPoly<C>], target: &Arc<Vars>) -> MultiPoly<C> {
        let one = MultiPoly::one(target);
        self.eval(images, &one, |c| MultiPoly::constant(target, c.clone()))
    }

    /// Replaces generator `i` by `value` (same generator list).
    pub fn subs(&self, i: usize, value: &MultiPoly<C>) -> MultiPoly<C> {
        let mut images = Self::gens(&self.vars);
        images[i] = value.clone();
        self.substitute(&images, &self.vars.clone())
    }

    /// Re-expresses `self` over `target`, matching generators by name.
    pub fn embed_into(&self, target: &Arc<Vars>) -> Result<MultiPoly<C>> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names.iter().enumerate() {
            match target.index(name) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.max_exp(i) > 0 {
                        return Err(AlgError::ForeignGenerator(name.clone(), target.listing()));
                    }
                    map.push(None)
                }
            }
        }
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut f = vec![0u32; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    f[j] += k;
                }
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Splits along generator `i`: returns `c_k` with `self = sum c_k x_i^k`,
    /// each `c_k` free of `x_i`.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, MultiPoly<C>> {
        let mut out: BTreeMap<u32, MultiPoly<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i];
            f[i] = 0;
            out.entry(k)
                .or_insert_with(|| MultiPoly::zero(&self.vars))
                .add_term(f, c.clone());
        }
        out
    }

    pub fn uses_only(&self, names: &[&str]) -> Result<()> {
        for (i, n) in self.vars.names.iter().enumerate() {
            if !names.contains(&n.as_str()) && self.max_exp(i) > 0 {
                return Err(AlgError::ForeignGenerator(n.clone(), names.join(", ")));
            }
        }
        Ok(())
    }

    fn monomial_string(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, k)| **k > 0)
            .map(|(i, k)| {
                if *k == 1 {
                    self.vars.names[i].clone()
                } else {
                    format!("{}^{}", self.vars.names[i], k)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Terms in display order: descending weighted degree, then descending
    /// exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da = self.vars.weight_of(a.0);
            let db = self.vars.weight_of(b.0);
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let mut s = c.to_string();
            let compound = s.contains(' ');
            let mut neg = false;
            if !compound && s.starts_with('-') {
                neg = true;
                s.remove(0);
            }
            let mono = self.monomial_string(e);
            let body = if mono.is_empty() {
                if compound {
                    format!("({})", s)
                } else {
                    s
                }
            } else if s == "1" {
                mono
            } else if compound {
                format!("({})*{}", s, mono)
            } else {
                format!("{}*{}", s, mono)
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

impl<C: Scalar> Ring for MultiPoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.vars)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("polynomial generator lists must agree")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("polynomial generator lists must agree")
    }
    fn negate(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negate())).collect(),
        }
    }
    fn int_like(&self, n: i64) -> Self {
        Self::from_int(&self.vars, n)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() == 1 && self.is_constant() {
            let c = self.constant_coeff().try_inv()?;
            Some(Self::constant(&self.vars, c))
        } else {
            None
        }
    }
}

crate::impl_ring_ops!(MultiPoly<C>, C: Scalar);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalars::{rat, Rat};

    fn xy() -> Arc<Vars> {
        Vars::new(&[("x", 1), ("y", 2)])
    }

    #[test]
    fn basic_arithmetic_and_display() {
        let v = xy();
        let x = MultiPoly::<Rat>::gen(&v, 0);
        let y = MultiPoly::<Rat>::gen(&v, 1);
        let p = (&x + &y).pow(2);
        assert_eq!(p.to_string(), "y^2 + 2*x*y + x^2");
        let q = p.scale(&rat(-1, 2));
        assert_eq!(q.to_string(), "-1/2*y^2 - x*y - 1/2*x^2");
        assert!((&p - &p).is_zero());
        assert_eq!(&p * &MultiPoly::one(&v), p);
        assert_eq!(p.degrees().into_iter().collect::<Vec<_>>(), vec![2, 3, 4]);
    }

    #[test]
    fn mismatched_generators_error() {
        let a = MultiPoly::<Rat>::gen(&xy(), 0);
        let b = MultiPoly::<Rat>::gen(&Vars::new(&[("x", 1)]), 0);
        assert!(matches!(a.try_add(&b), Err(AlgError::GeneratorMismatch { .. })));
    }

    #[test]
    fn substitution_and_embedding() {
        let v = xy();
        let x = MultiPoly::<Rat>::gen(&v, 0);
        let y = MultiPoly::<Rat>::gen(&v, 1);
        let p = &x * &y + x.clone();
        let s = p.subs(1, &(&x + &MultiPoly::from_int(&v, 1)));
        assert_eq!(s, &x * &x + x.scale(&rat(2, 1)));
        let w = Vars::new(&[("y", 2), ("z", 1), ("x", 1)]);
        let e = p.embed_into(&w).unwrap();
        assert_eq!(e.to_string(), "y*x + x");
        assert!(e.embed_into(&Vars::new(&[("x", 1)])).is_err());
        let parts = p.coefficients_in(1);
        assert_eq!(parts[&1], x);
        assert_eq!(parts[&0], x);
    }
}
