//! Normal forms in Z[z1,z2,z3]/(z1*z2 + z2*z3 + z3*z1).
//!
//! Under lex order z1 > z2 > z3 the leading term of the relation is z1*z2, so
//! the normal monomials are exactly those not divisible by z1*z2.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use super::poly::{MultiPoly, Vars};
use super::ring::{Ring, Scalar};
use super::scalars::Rat;
use crate::error::{AlgError, Result};

pub const Z_NAMES: [&str; 3] = ["z1", "z2", "z3"];

pub fn z_vars() -> Arc<Vars> {
    static V: OnceLock<Arc<Vars>> = OnceLock::new();
    V.get_or_init(|| Vars::new(&[("z1", 1), ("z2", 1), ("z3", 1)]))
        .clone()
}

type Expansion = Vec<([u32; 3], BigInt)>;

/// Normal form of `z1^a * z2^b` as integer combinations of normal monomials.
fn expand_z1z2(a: u32, b: u32, memo: &mut HashMap<(u32, u32), Expansion>) -> Expansion {
    if a == 0 || b == 0 {
        return vec![([a, b, 0], BigInt::from(1))];
    }
    if let Some(v) = memo.get(&(a, b)) {
        return v.clone();
    }
    // z1^a z2^b = -z3 * (z1^(a-1) z2^b + z1^a z2^(b-1))
    let mut acc: HashMap<[u32; 3], BigInt> = HashMap::new();
    for (x, y) in [(a - 1, b), (a, b - 1)] {
        for (m, c) in expand_z1z2(x, y, memo) {
            *acc.entry([m[0], m[1], m[2] + 1]).or_insert_with(|| BigInt::from(0)) -= c;
        }
    }
    let mut out: Expansion = acc.into_iter().filter(|(_, c)| *c != BigInt::from(0)).collect();
    out.sort();
    memo.insert((a, b), out.clone());
    out
}

fn z_indices(vars: &Vars) -> Result<[usize; 3]> {
    let mut idx = [0usize; 3];
    for (k, n) in Z_NAMES.iter().enumerate() {
        idx[k] = vars.index(n).ok_or_else(|| {
            AlgError::InvalidArgument(format!("generator list [{}] lacks {}", vars.listing(), n))
        })?;
    }
    Ok(idx)
}

/// Reduces the z1,z2,z3-part of any polynomial whose generators include
/// them; the remaining generators ride along unchanged.
pub fn reduce_sigma2<C: Scalar>(p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    let [i1, i2, i3] = z_indices(p.vars())?;
    let mut memo = HashMap::new();
    let mut out = MultiPoly::zero(p.vars());
    for (e, c) in p.terms() {
        if e[i1] == 0 || e[i2] == 0 {
            out.add_term(e.clone(), c.clone());
            continue;
        }
        for (m, k) in expand_z1z2(e[i1], e[i2], &mut memo) {
            let mut f = e.clone();
            f[i1] = m[0];
            f[i2] = m[1];
            f[i3] += m[2];
            out.add_term(f, c.times(&C::from_bigint(&k)));
        }
    }
    Ok(out)
}

pub fn is_sigma2_normal<C: Scalar>(p: &MultiPoly<C>) -> bool {
    match z_indices(p.vars()) {
        Ok([i1, i2, _]) => p.terms().all(|(e, _)| e[i1] == 0 || e[i2] == 0),
        Err(_) => false,
    }
}

/// Normal-form monomials of degree `k`, as exponent triples.
pub fn normal_monomials(k: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            if a > 0 && b > 0 {
                continue;
            }
            out.push([a, b, k - a - b]);
        }
    }
    out
}

pub fn mf7_rank(k: u32) -> usize {
    normal_monomials(k).len()
}

/// An element of the level-7 ring, always stored in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MF7Elem<C: Scalar = Rat>(MultiPoly<C>);

impl<C: Scalar> MF7Elem<C> {
    pub fn from_poly(p: &MultiPoly<C>) -> Result<Self> {
        p.uses_only(&Z_NAMES)?;
        let p = p.embed_into(&z_vars())?;
        Ok(MF7Elem(reduce_sigma2(&p)?))
    }

    pub fn zero() -> Self {
        MF7Elem(MultiPoly::zero(&z_vars()))
    }

    pub fn one() -> Self {
        MF7Elem(MultiPoly::one(&z_vars()))
    }

    pub fn constant(c: C) -> Self {
        MF7Elem(MultiPoly::constant(&z_vars(), c))
    }

    /// `z_i` for i in 1..=3.
    pub fn z(i: usize) -> Self {
        MF7Elem(MultiPoly::gen(&z_vars(), i - 1))
    }

    pub fn monomial(e: [u32; 3], c: C) -> Self {
        Self::from_poly(&MultiPoly::monomial(&z_vars(), e.to_vec(), c)).expect("z monomial")
    }

    pub fn sigma1() -> Self {
        Self::z(1).plus(&Self::z(2)).plus(&Self::z(3))
    }

    pub fn sigma3() -> Self {
        Self::z(1).times(&Self::z(2)).times(&Self::z(3))
    }

    /// `z1^2 z2 + z2^2 z3 + z3^2 z1`.
    pub fn p() -> Self {
        let (a, b, c) = (Self::z(1), Self::z(2), Self::z(3));
        a.pow(2).times(&b).plus(&b.pow(2).times(&c)).plus(&c.pow(2).times(&a))
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.0
    }

    pub fn into_poly(self) -> MultiPoly<C> {
        self.0
    }

    pub fn scale(&self, c: &C) -> Self {
        MF7Elem(self.0.scale(c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.0.homogeneous_degree()
    }
}

impl<C: Scalar> fmt::Display for MF7Elem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<C: Scalar> Ring for MF7Elem<C> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        MF7Elem(self.0.plus(&rhs.0))
    }
    fn times(&self, rhs: &Self) -> Self {
        MF7Elem(reduce_sigma2(&self.0.times(&rhs.0)).expect("z generators present"))
    }
    fn negate(&self) -> Self {
        MF7Elem(self.0.negate())
    }
    fn int_like(&self, n: i64) -> Self {
        Self::constant(C::from_int(n))
    }
    fn try_inv(&self) -> Option<Self> {
        self.0.try_inv().map(MF7Elem)
    }
}

crate::impl_ring_ops!(MF7Elem<C>, C: Scalar);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zpoly(terms: &[([u32; 3], i64)]) -> MultiPoly<Rat> {
        MultiPoly::from_terms(
            &z_vars(),
            terms.iter().map(|(e, c)| (e.to_vec(), Rat::from_int(*c))),
        )
    }

    #[test]
    fn relation_and_rewrite() {
        let s2 = zpoly(&[([1, 1, 0], 1), ([0, 1, 1], 1), ([1, 0, 1], 1)]);
        assert!(MF7Elem::from_poly(&s2).unwrap().is_zero());
        let z1z2 = MF7Elem::from_poly(&zpoly(&[([1, 1, 0], 1)])).unwrap();
        assert_eq!(z1z2.to_string(), "-z1*z3 - z2*z3");
        let s1sq = MF7Elem::<Rat>::sigma1().pow(2);
        assert_eq!(s1sq.to_string(), "z1^2 + z2^2 + z3^2");
    }

    #[test]
    fn ranks() {
        assert_eq!(mf7_rank(0), 1);
        assert_eq!(mf7_rank(1), 3);
        assert_eq!(mf7_rank(2), 5);
        for k in 0..=12 {
            assert_eq!(mf7_rank(k), 2 * k as usize + 1);
        }
    }

    #[test]
    fn foreign_generator_rejected() {
        let v = Vars::new(&[("z1", 1), ("w", 1)]);
        let w = MultiPoly::<Rat>::gen(&v, 1);
        assert!(matches!(MF7Elem::from_poly(&w), Err(AlgError::ForeignGenerator(..))));
    }

    fn arb_zpoly() -> impl Strategy<Value = MultiPoly<Rat>> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(
                &z_vars(),
                ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], Rat::from_int(k))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn nf_is_idempotent_and_multiplicative(p in arb_zpoly(), q in arb_zpoly()) {
            let np = reduce_sigma2(&p).unwrap();
            prop_assert!(is_sigma2_normal(&np));
            prop_assert_eq!(reduce_sigma2(&np).unwrap(), np.clone());
            let nq = reduce_sigma2(&q).unwrap();
            let lhs = reduce_sigma2(&(&p * &q)).unwrap();
            let rhs = reduce_sigma2(&(&np * &nq)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nf_preserves_degree(a in 0u32..6, b in 0u32..6, c in 0u32..6) {
            let m = zpoly(&[([a, b, c], 1)]);
            let n = reduce_sigma2(&m).unwrap();
            prop_assert!(n.is_homogeneous_of((a + b + c) as i64));
        }

        #[test]
        fn nf_differs_by_ideal_member(p in arb_zpoly()) {
            // p - nf(p) vanishes after substituting a point on sigma2 = 0:
            // z = (1, 1, -1/2) satisfies 1 - 1/2 - 1/2 = 0.
            let n = reduce_sigma2(&p).unwrap();
            let pt = [Rat::from_int(1), Rat::from_int(1), crate::exactalg::scalars::rat(-1, 2)];
            let one = Rat::from_int(1);
            let d = p.minus(&n).eval(&pt, &one, |c| c.clone());
            prop_assert!(Ring::is_zero(&d));
        }
    }
}
