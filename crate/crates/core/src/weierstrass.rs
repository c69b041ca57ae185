//! Weierstrass coefficients, their standard invariants, coordinate changes
//! `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`, and the Tate normal form
//! at a marked point.

use std::fmt;

use crate::error::{AlgError, Result};
use crate::exactalg::{rat, MF7Elem, MultiPoly, Rat, Ring, Vars};

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCoeffs<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub a6: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformParams<T> {
    pub r: T,
    pub s: T,
    pub t: T,
    pub u: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Invariants<T> {
    pub b2: T,
    pub b4: T,
    pub b6: T,
    pub b8: T,
    pub c4: T,
    pub c6: T,
    pub delta: T,
}

/// Output of the Tate-normal-form extraction.
#[derive(Clone, Debug, PartialEq)]
pub struct TateNormal<T> {
    pub s_prime: T,
    pub alpha1: T,
    pub alpha2: T,
    pub alpha3: T,
}

fn k<T: Ring>(x: &T, n: i64) -> T {
    x.int_like(n)
}

impl<T: Ring> WeierstrassCoeffs<T> {
    pub fn new(a1: T, a2: T, a3: T, a4: T, a6: T) -> Self {
        WeierstrassCoeffs { a1, a2, a3, a4, a6 }
    }

    pub fn as_array(&self) -> [&T; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// `y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6)` at a point.
    pub fn equation_at(&self, x: &T, y: &T) -> T {
        let lhs = y.times(y).plus(&self.a1.times(x).times(y)).plus(&self.a3.times(y));
        let rhs = x
            .pow(3)
            .plus(&self.a2.times(&x.times(x)))
            .plus(&self.a4.times(x))
            .plus(&self.a6);
        lhs.minus(&rhs)
    }
}

impl<T: Ring> TransformParams<T> {
    pub fn new(r: T, s: T, t: T, u: T) -> Self {
        TransformParams { r, s, t, u }
    }

    pub fn identity_like(x: &T) -> Self {
        TransformParams::new(x.zero_like(), x.zero_like(), x.zero_like(), x.one_like())
    }

    /// Parameters of "first `self`, then `next`".
    pub fn then(&self, next: &Self) -> Self {
        let u1sq = self.u.times(&self.u);
        TransformParams {
            u: self.u.times(&next.u),
            r: self.r.plus(&u1sq.times(&next.r)),
            s: self.s.plus(&self.u.times(&next.s)),
            t: self
                .t
                .plus(&u1sq.times(&self.u).times(&next.t))
                .plus(&self.s.times(&u1sq).times(&next.r)),
        }
    }
}

pub fn c4_c6_delta<T: Ring>(w: &WeierstrassCoeffs<T>) -> Invariants<T> {
    let WeierstrassCoeffs { a1, a2, a3, a4, a6 } = w;
    let b2 = a1.times(a1).plus(&k(a1, 4).times(a2));
    let b4 = k(a1, 2).times(a4).plus(&a1.times(a3));
    let b6 = a3.times(a3).plus(&k(a1, 4).times(a6));
    let b8 = a1
        .times(a1)
        .times(a6)
        .plus(&k(a1, 4).times(a2).times(a6))
        .minus(&a1.times(a3).times(a4))
        .plus(&a2.times(a3).times(a3))
        .minus(&a4.times(a4));
    let c4 = b2.times(&b2).minus(&k(a1, 24).times(&b4));
    let c6 = b2
        .pow(3)
        .negate()
        .plus(&k(a1, 36).times(&b2).times(&b4))
        .minus(&k(a1, 216).times(&b6));
    let delta = b2
        .times(&b2)
        .times(&b8)
        .negate()
        .minus(&k(a1, 8).times(&b4.pow(3)))
        .minus(&k(a1, 27).times(&b6.times(&b6)))
        .plus(&k(a1, 9).times(&b2).times(&b4).times(&b6));
    Invariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        delta,
    }
}

/// The products `u^i a_i'`, which need no division.
pub fn transform_numerators<T: Ring>(
    w: &WeierstrassCoeffs<T>,
    p: &TransformParams<T>,
) -> WeierstrassCoeffs<T> {
    let WeierstrassCoeffs { a1, a2, a3, a4, a6 } = w;
    let TransformParams { r, s, t, .. } = p;
    let two = k(a1, 2);
    let three = k(a1, 3);
    WeierstrassCoeffs {
        a1: a1.plus(&two.times(s)),
        a2: a2.minus(&s.times(a1)).plus(&three.times(r)).minus(&s.times(s)),
        a3: a3.plus(&r.times(a1)).plus(&two.times(t)),
        a4: a4
            .minus(&s.times(a3))
            .plus(&two.times(r).times(a2))
            .minus(&t.plus(&r.times(s)).times(a1))
            .plus(&three.times(r).times(r))
            .minus(&two.times(s).times(t)),
        a6: a6
            .plus(&r.times(a4))
            .plus(&r.times(r).times(a2))
            .plus(&r.pow(3))
            .minus(&t.times(a3))
            .minus(&t.times(t))
            .minus(&r.times(t).times(a1)),
    }
}

pub fn transform<T: Ring>(
    w: &WeierstrassCoeffs<T>,
    p: &TransformParams<T>,
) -> Result<WeierstrassCoeffs<T>> {
    let uinv = p
        .u
        .try_inv()
        .ok_or_else(|| AlgError::NotUnit(format!("u = {}", p.u)))?;
    let n = transform_numerators(w, p);
    let u2 = uinv.times(&uinv);
    let u3 = u2.times(&uinv);
    Ok(WeierstrassCoeffs {
        a1: n.a1.times(&uinv),
        a2: n.a2.times(&u2),
        a3: n.a3.times(&u3),
        a4: n.a4.times(&u2.times(&u2)),
        a6: n.a6.times(&u3.times(&u3)),
    })
}

/// Moves `(x0, y0)` to the origin and clears `a4`, giving
/// `y^2 + alpha1 xy + alpha3 y = x^3 + alpha2 x^2`.
pub fn tate_normal_from_point<T: Ring>(
    w: &WeierstrassCoeffs<T>,
    x0: &T,
    y0: &T,
) -> Result<TateNormal<T>> {
    let WeierstrassCoeffs { a1, a2, a3, a4, .. } = w;
    let two = k(a1, 2);
    let alpha3 = a3.plus(&a1.times(x0)).plus(&two.times(y0));
    let inv = alpha3
        .try_inv()
        .ok_or_else(|| AlgError::NotUnit(format!("a3 + a1*x0 + 2*y0 = {}", alpha3)))?;
    let s_num = a4
        .plus(&two.times(a2).times(x0))
        .minus(&a1.times(y0))
        .plus(&k(a1, 3).times(x0).times(x0));
    let s_prime = s_num.times(&inv);
    let a1_num = a1
        .times(a3)
        .plus(&two.times(a4))
        .plus(&a1.times(a1).plus(&k(a1, 4).times(a2)).times(x0))
        .plus(&k(a1, 6).times(x0).times(x0));
    let alpha1 = a1_num.times(&inv);
    let alpha2 = a2
        .plus(&k(a1, 3).times(x0))
        .minus(&a1.times(&s_prime))
        .minus(&s_prime.times(&s_prime));
    Ok(TateNormal {
        s_prime,
        alpha1,
        alpha2,
        alpha3,
    })
}

impl<T: Ring> TateNormal<T> {
    pub fn curve(&self) -> WeierstrassCoeffs<T> {
        let z = self.alpha1.zero_like();
        WeierstrassCoeffs::new(
            self.alpha1.clone(),
            self.alpha2.clone(),
            self.alpha3.clone(),
            z.clone(),
            z,
        )
    }
}

/// The alpha-polynomials in z1, z2, z3 of the level-7 Tate normal form.
pub fn level7_alphas() -> [MF7Elem; 3] {
    let (z1, z2, z3) = (MF7Elem::z(1), MF7Elem::z(2), MF7Elem::z(3));
    [
        z1.minus(&z2).plus(&z3),
        z1.times(&z2).plus(&z1.times(&z3)),
        z1.times(&z3).times(&z3),
    ]
}

/// Images of a2, a4, a6 after completing the square in the level-7 Tate
/// normal form: `alpha1^2/4 + alpha2`, `alpha1 alpha3 / 2`, `alpha3^2 / 4`.
pub fn kappa_images() -> [MF7Elem; 3] {
    let [a1, a2, a3] = level7_alphas();
    let q = |x: &MF7Elem, c: Rat| x.scale(&c);
    [
        q(&a1.times(&a1), rat(1, 4)).plus(&a2),
        q(&a1.times(&a3), rat(1, 2)),
        q(&a3.times(&a3), rat(1, 4)),
    ]
}

/// Checks that `kappa_images` is the result of the transformation
/// `(0, -alpha1/2, -alpha3/2, 1)` applied to the Tate normal form.
pub fn kappa_from_transform() -> Result<WeierstrassCoeffs<MF7Elem>> {
    let [a1, a2, a3] = level7_alphas();
    let zero = MF7Elem::zero();
    let tnf = WeierstrassCoeffs::new(a1.clone(), a2, a3.clone(), zero.clone(), zero.clone());
    let p = TransformParams::new(
        zero,
        a1.scale(&rat(-1, 2)),
        a3.scale(&rat(-1, 2)),
        MF7Elem::one(),
    );
    transform(&tnf, &p)
}

pub fn level1_vars() -> std::sync::Arc<Vars> {
    Vars::new(&[("c4", 4), ("c6", 6), ("Delta", 12)])
}

/// Sends a polynomial in c4, c6, Delta to the level-7 ring through the
/// curve `y^2 = x^3 + kappa(a2) x^2 + kappa(a4) x + kappa(a6)`.
pub fn level1_image(m: &MultiPoly<Rat>) -> Result<MF7Elem> {
    m.uses_only(&["c4", "c6", "Delta"])?;
    let m = m.embed_into(&level1_vars())?;
    let [k2, k4, k6] = kappa_images();
    let zero = MF7Elem::zero();
    let w = WeierstrassCoeffs::new(zero.clone(), k2, zero, k4, k6);
    let inv = c4_c6_delta(&w);
    let images = [inv.c4, inv.c6, inv.delta];
    Ok(m.eval(&images, &MF7Elem::one(), |c| MF7Elem::constant(c.clone())))
}

impl<T: Ring> fmt::Display for WeierstrassCoeffs<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[a1 = {}, a2 = {}, a3 = {}, a4 = {}, a6 = {}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// Generic coefficients over Z[a1, a2, a3, a4, a6] (as rationals).
pub fn generic_curve() -> WeierstrassCoeffs<MultiPoly<Rat>> {
    let v = Vars::new(&[("a1", 1), ("a2", 2), ("a3", 3), ("a4", 4), ("a6", 6)]);
    let g = MultiPoly::gens(&v);
    WeierstrassCoeffs::new(g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone(), g[4].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_expr, rat_int, z_vars, Scalar};
    use proptest::prelude::*;

    #[test]
    fn discriminant_relation_generic() {
        let w = generic_curve();
        let inv = c4_c6_delta(&w);
        let lhs = inv.delta.scale(&rat_int(1728));
        let rhs = inv.c4.pow(3).minus(&inv.c6.pow(2));
        assert_eq!(lhs, rhs);
        assert!(inv.delta.is_homogeneous_of(12));
    }

    #[test]
    fn invariance_generic() {
        let v = Vars::new(&[
            ("a1", 1), ("a2", 2), ("a3", 3), ("a4", 4), ("a6", 6),
            ("r", 2), ("s", 1), ("t", 3), ("u", 0),
        ]);
        let g = MultiPoly::<Rat>::gens(&v);
        let w = WeierstrassCoeffs::new(g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone(), g[4].clone());
        let p = TransformParams::new(g[5].clone(), g[6].clone(), g[7].clone(), g[8].clone());
        let n = transform_numerators(&w, &p);
        let before = c4_c6_delta(&w);
        let after = c4_c6_delta(&n);
        assert_eq!(after.c4, before.c4);
        assert_eq!(after.delta, before.delta);
    }

    #[test]
    fn identity_and_point_moving() {
        let w = generic_curve();
        let id = TransformParams::identity_like(&w.a1);
        assert_eq!(transform(&w, &id).unwrap(), w);
        // y^2 + xy = x^3 - x + 1 has the point (1, -1)? 1 - 1 = 1 - 1 + 1 fails;
        // use y^2 + y = x^3 - x with (1, 0) and (0, 0).
        let r = |x: i64| rat_int(x);
        let e = WeierstrassCoeffs::new(r(0), r(0), r(1), r(-1), r(0));
        assert!(Ring::is_zero(&e.equation_at(&r(1), &r(0))));
        let moved = transform(&e, &TransformParams::new(r(1), r(0), r(0), r(1))).unwrap();
        assert!(Ring::is_zero(&moved.a6));
        let tn = tate_normal_from_point(&e, &r(1), &r(0)).unwrap();
        let tnf = tn.curve();
        assert_eq!(c4_c6_delta(&tnf).delta, c4_c6_delta(&e).delta);
        let two_step = TransformParams::new(r(1), r(0), r(0), r(1))
            .then(&TransformParams::new(r(0), tn.s_prime.clone(), r(0), r(1)));
        let direct = transform(&e, &two_step).unwrap();
        assert_eq!(direct, tnf);
    }

    #[test]
    fn a6_zero_specialization() {
        let r = |x: i64| rat_int(x);
        let e = WeierstrassCoeffs::new(r(1), r(2), r(3), r(5), r(0));
        let tn = tate_normal_from_point(&e, &r(0), &r(0)).unwrap();
        assert_eq!(tn.s_prime, rat(5, 3));
        assert_eq!(tn.alpha3, r(3));
    }

    #[test]
    fn kappa_matches_transform() {
        let kap = kappa_images();
        let t = kappa_from_transform().unwrap();
        assert!(t.a1.is_zero() && t.a3.is_zero());
        assert_eq!([t.a2, t.a4, t.a6], kap);
        let v = z_vars();
        let k2 = MF7Elem::from_poly(&parse_expr("1/4*(z1-z2+z3)^2 - z2*z3", &v).unwrap()).unwrap();
        assert_eq!(kap[0], k2);
        let k6 = MF7Elem::from_poly(&parse_expr("1/4*z1^2*z3^4", &v).unwrap()).unwrap();
        assert_eq!(kap[2], k6);
    }

    #[test]
    fn level1_delta() {
        let lv = level1_vars();
        let d = parse_expr("Delta", &lv).unwrap();
        let img = level1_image(&d).unwrap();
        let (s3, p) = (MF7Elem::sigma3(), MF7Elem::p());
        let want = s3.pow(3).times(&p).negate().minus(&s3.pow(4).scale(&rat_int(8)));
        assert_eq!(img, want);
        assert_eq!(level1_image(&parse_expr("1", &lv).unwrap()).unwrap(), MF7Elem::one());
    }

    fn arb_q() -> impl Strategy<Value = Rat> {
        (-20i64..21, 1i64..6).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_w() -> impl Strategy<Value = WeierstrassCoeffs<Rat>> {
        prop::array::uniform5(arb_q()).prop_map(|[a, b, c, d, e]| WeierstrassCoeffs::new(a, b, c, d, e))
    }

    fn arb_t() -> impl Strategy<Value = TransformParams<Rat>> {
        (arb_q(), arb_q(), arb_q(), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5]))
            .prop_map(|(r, s, t, u)| TransformParams::new(r, s, t, Rat::from_int(u)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn composition(w in arb_w(), t1 in arb_t(), t2 in arb_t()) {
            let two = transform(&transform(&w, &t1).unwrap(), &t2).unwrap();
            let one = transform(&w, &t1.then(&t2)).unwrap();
            prop_assert_eq!(two, one);
        }

        #[test]
        fn invariants_scale(w in arb_w(), t in arb_t()) {
            let w2 = transform(&w, &t).unwrap();
            let a = c4_c6_delta(&w);
            let b = c4_c6_delta(&w2);
            prop_assert_eq!(&b.c4 * &Ring::pow(&t.u, 4), a.c4);
            prop_assert_eq!(&b.delta * &Ring::pow(&t.u, 12), a.delta);
        }
    }
}
