//! Named checks and their minimum precisions.

use tmf7::exactalg::{
    mf7_rank, normal_monomials, parse_expr, rat, rat_int, reduce_sigma2, z_vars, MF7Elem, Matrix,
    MultiPoly, Rat, Ring,
};
use tmf7::hopf;
use tmf7::invariants7 as inv;
use tmf7::modforms7::{self, qexp_of_mf7, z_basis};
use tmf7::tate;
use tmf7::weierstrass::{self as wst, TransformParams};
use tmf7::Certificate;

pub type CheckFn = fn(i64) -> Certificate;

#[derive(Clone, Copy)]
pub struct CheckSpec {
    pub name: &'static str,
    pub module: &'static str,
    /// None for checks that do not touch q-expansions.
    pub min_prec: Option<i64>,
    pub reference: &'static str,
    pub run: CheckFn,
}

macro_rules! tri {
    ($cert:ident, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $cert.fail(err);
                return $cert;
            }
        }
    };
}

pub fn registry() -> Vec<CheckSpec> {
    let mut v = vec![
        spec("zbasis-low-terms", "modforms7", Some(3), "z-basis constant and low terms", zbasis_low_terms),
        spec("zbasis-integrality", "modforms7", Some(50), "integral z-basis", zbasis_integrality),
        spec("sigma2-relation", "modforms7", Some(25), "the quadratic relation", sigma2_relation),
        spec("action", "modforms7", None, "character action on the z-basis", |_| {
            modforms7::verify_action_via_eisenstein()
        }),
        spec("invariants-mf7", "modforms7", None, "tau-invariants of mf7 up to degree 12", invariants_mf7),
        spec("qexp-injectivity", "modforms7", Some(13), "q-expansion determines forms", qexp_injectivity),
        spec("mf7-rank", "exactalg", None, "rank 2k+1 in degree k", mf7_rank_check),
        spec("tate-xy", "tate", Some(9), "torsion point expansions for n=7", tate_xy),
        spec("tate-discriminant", "tate", Some(20), "discriminant of the Tate curve", tate_discriminant),
        spec("tate-curve-identity", "tate", Some(16), "torsion point lies on the Tate curve", tate_curve_identity),
        spec("tate-k0-closed-form", "tate", Some(30), "divisor-sum form of the k=0 point", tate_k0),
        spec("lowest-term-table", "tate", None, "lowest terms of X, Y, X+2Y", lowest_term_table),
        spec("alpha-match", "tate", Some(25), "Tate normal form coefficients vs z-basis", alpha_match),
        spec("discriminant-identity", "weierstrass", None, "1728 Delta = c4^3 - c6^2", discriminant_identity),
        spec("transform-invariance", "weierstrass", None, "coordinate changes scale c4, c6, Delta", transform_invariance),
        spec("kappa", "weierstrass", None, "level-7 curve in a1 = a3 = 0 form", kappa),
        spec("level1-delta", "weierstrass", None, "image of Delta in mf7", level1_delta),
        spec("level1-delta-qexp", "weierstrass", Some(25), "q-expansion of the image of Delta", level1_delta_qexp),
        spec("transfer", "invariants7", None, "transfer identities", transfer),
        spec("hopf-axioms", "hopf", None, "Hopf algebroid axioms", |_| hopf::axioms_check()),
        spec("mf12-comodule", "hopf", None, "rank-3 comodule", |_| hopf::mf12_comodule().check("mf12-comodule")),
        spec("dual-check", "hopf", None, "self-duality up to a shift by 4", |_| hopf::self_duality_certificate()),
        spec("double-dual", "hopf", None, "double dual isomorphism", double_dual),
        spec("basis48", "invariants7", None, "48-element basis over A", |_| inv::basis48_certificate()),
        spec("sbasis", "invariants7", None, "A-basis of the invariants", |_| inv::s_basis_certificate()),
        spec("minor-rational", "invariants7", None, "nonzero rational minor", |_| inv::minor_certificates().0),
        spec("minor-mod3", "invariants7", None, "3-adic unit minor", |_| inv::minor_certificates().1),
        spec("published-expansions", "invariants7", None, "basis expansions of the invariants", published_expansions),
        spec("coaction-table", "invariants7", None, "coaction on the invariants", |_| inv::coaction_certificate()),
        spec("splitting", "invariants7", None, "comodule splitting of the invariants", |_| inv::splitting_iso_check()),
        spec("degree-formula", "invariants7", None, "degree of the level-n cover", degree_formula),
    ];
    v.sort_by_key(|s| s.name);
    v
}

fn spec(
    name: &'static str,
    module: &'static str,
    min_prec: Option<i64>,
    reference: &'static str,
    run: CheckFn,
) -> CheckSpec {
    CheckSpec {
        name,
        module,
        min_prec,
        reference,
        run,
    }
}

fn ints(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| rat_int(x)).collect()
}

fn zbasis_low_terms(prec: i64) -> Certificate {
    let mut c = Certificate::new("zbasis-low-terms");
    let zb = tri!(c, z_basis(prec));
    let want = [ints(&[0, 1, 0]), ints(&[0, -1, 1]), ints(&[1, 2, 3])];
    for (i, w) in want.iter().enumerate() {
        let got: Vec<Rat> = (0..3).map(|e| zb.z(i + 1).coeff(e)).collect();
        c.witness(&format!("z{} mod q^3", i + 1), zb.z(i + 1).truncate(3));
        c.require(got == *w, format!("z{} low terms", i + 1));
    }
    c
}

fn zbasis_integrality(prec: i64) -> Certificate {
    let mut c = Certificate::new("zbasis-integrality");
    let zb = tri!(c, z_basis(prec));
    for i in 1..=3 {
        let ok = zb.z(i).terms().all(|(_, x)| x.is_integer());
        c.require(ok, format!("z{} has a non-integral coefficient", i));
    }
    c.witness("integral_below", format!("q^{}", prec));
    c
}

fn sigma2_relation(prec: i64) -> Certificate {
    let mut c = Certificate::new("sigma2-relation");
    let zb = tri!(c, z_basis(prec));
    let s2 = tri!(c, parse_expr("z1*z2 + z2*z3 + z3*z1", &z_vars()));
    let q = zb.qexp_poly(&s2);
    c.witness("qexp", &q);
    c.require(q.valuation().is_none(), "sigma2 has a nonzero q-expansion");
    c
}

fn invariants_mf7(_: i64) -> Certificate {
    let mut c = Certificate::new("invariants-mf7");
    for k in 0..=12 {
        let sub = modforms7::invariant_certificate(k);
        c.witness(&format!("count[{}]", k), sub.get("formula_count").unwrap_or("?"));
        c.absorb(&sub);
    }
    c.with_degree_bound(12);
    c
}

fn qexp_injectivity(prec: i64) -> Certificate {
    let mut c = Certificate::new("qexp-injectivity");
    let zb = tri!(c, z_basis(prec));
    for k in 0..=6u32 {
        let rows: Vec<Vec<Rat>> = normal_monomials(k)
            .iter()
            .map(|m| {
                let s = zb.qexp(&MF7Elem::monomial(*m, rat_int(1)));
                (0..=2 * k as i64).map(|e| s.coeff(e)).collect()
            })
            .collect();
        let n = rows.len();
        let rank = Matrix::from_rows(rows).rank();
        c.require(rank == n, format!("degree {}: rank {} of {}", k, rank, n));
    }
    c.with_degree_bound(6);
    c.witness("independent_mod", "q^(2k+1) for k <= 6");
    c
}

fn mf7_rank_check(_: i64) -> Certificate {
    let mut c = Certificate::new("mf7-rank");
    for k in 0..=12u32 {
        c.require(mf7_rank(k) == 2 * k as usize + 1, format!("rank in degree {}", k));
    }
    c.with_degree_bound(12);
    c
}

fn tate_xy(prec: i64) -> Certificate {
    let mut c = Certificate::new("tate-xy");
    let pt = tri!(c, tate::torsion_xy(7, 1, 0, prec));
    let (x, y) = tri!(c, pt.rational());
    let wx = ints(&[1, 2, 3, 4, 5, 7, 5, 9]);
    let wy = ints(&[0, 1, 3, 6, 10, 14, 22, 28]);
    let gx: Vec<Rat> = (1..=8).map(|e| x.coeff(e)).collect();
    let gy: Vec<Rat> = (1..=8).map(|e| y.coeff(e)).collect();
    c.witness("X", x.truncate(9));
    c.witness("Y", y.truncate(9));
    c.require(gx == wx, "X coefficients");
    c.require(gy == wy, "Y coefficients");
    c
}

fn tate_discriminant(prec: i64) -> Certificate {
    let mut c = Certificate::new("tate-discriminant");
    let t = tri!(c, tate::tate_coeffs(1, prec));
    let d = wst::c4_c6_delta(&t.weierstrass()).delta;
    let want = tate::discriminant_product(1, prec);
    c.witness("delta", d.truncate(6));
    c.require(d == want, "Delta of the Tate curve differs from q prod (1-q^m)^24");
    c
}

fn tate_curve_identity(prec: i64) -> Certificate {
    let mut c = Certificate::new("tate-curve-identity");
    for (n, k, d) in [(7, 1, 0), (7, 3, 1), (7, 0, 1), (5, 2, 0), (6, 3, 1)] {
        let res = tri!(c, tate::curve_residual(n, k, d, prec));
        c.require(res.valuation().is_none(), format!("point ({},{},{}) is off the curve", n, k, d));
    }
    c
}

fn tate_k0(prec: i64) -> Certificate {
    let mut c = Certificate::new("tate-k0-closed-form");
    let general = tri!(c, tate::torsion_xy(7, 0, 1, prec));
    let (x, y) = tate::torsion_xy_k0_divisor_form(7, prec, |l| l);
    c.require(general.x == x && general.y == y, "divisor form differs from the general sum");
    c
}

fn lowest_term_table(_: i64) -> Certificate {
    let mut c = Certificate::new("lowest-term-table");
    let mut rows = 0;
    for n in 3..=10u64 {
        for k in 0..n {
            for d in [0, 1] {
                if k == 0 && d == 0 {
                    continue;
                }
                let row = tri!(c, tate::lowest_term_table(n, k, d));
                c.absorb(&row.certificate());
                rows += 1;
            }
        }
    }
    c.witness("rows_checked", rows);
    c
}

fn alpha_match(prec: i64) -> Certificate {
    let mut c = Certificate::new("alpha-match");
    let a = tri!(c, tate::alpha_series(7, 1, 0, prec));
    let got = tri!(c, a.rational());
    let want = wst::level7_alphas();
    for (i, (g, w)) in got.iter().zip(want.iter()).enumerate() {
        let wq = tri!(c, qexp_of_mf7(w, prec));
        c.witness(&format!("alpha{}", i + 1), w);
        c.require(*g == wq, format!("alpha{} differs from {}", i + 1, w));
    }
    if c.passed() {
        c.witness("result", format!("matched modulo q^{}", prec));
    }
    c
}

fn discriminant_identity(_: i64) -> Certificate {
    let mut c = Certificate::new("discriminant-identity");
    let inv = wst::c4_c6_delta(&wst::generic_curve());
    let lhs = inv.delta.scale(&rat_int(1728));
    let rhs = inv.c4.pow(3).minus(&inv.c6.pow(2));
    c.require(lhs == rhs, "1728 Delta != c4^3 - c6^2");
    c.witness("delta_terms", inv.delta.num_terms());
    c
}

fn transform_invariance(_: i64) -> Certificate {
    let mut c = Certificate::new("transform-invariance");
    let w = wst::generic_curve();
    let v = w.a1.vars().clone();
    let k = |n, d| MultiPoly::constant(&v, rat(n, d));
    let p = TransformParams::new(k(2, 1), k(-1, 3), k(5, 1), k(3, 1));
    let w2 = tri!(c, wst::transform(&w, &p));
    let (i1, i2) = (wst::c4_c6_delta(&w), wst::c4_c6_delta(&w2));
    let u = rat_int(3);
    let up = |e: u32| MultiPoly::constant(&v, Ring::pow(&u, e));
    c.require(i2.c4.times(&up(4)) == i1.c4, "c4 scaling");
    c.require(i2.c6.times(&up(6)) == i1.c6, "c6 scaling");
    c.require(i2.delta.times(&up(12)) == i1.delta, "Delta scaling");
    let q = TransformParams::new(k(-1, 1), k(1, 2), k(0, 1), k(1, 3));
    let composed = tri!(c, wst::transform(&w, &p.then(&q)));
    let stepwise = tri!(c, wst::transform(&w2, &q));
    c.require(composed == stepwise, "composition of coordinate changes");
    c
}

fn kappa(_: i64) -> Certificate {
    let mut c = Certificate::new("kappa");
    let w = tri!(c, wst::kappa_from_transform());
    let k = wst::kappa_images();
    c.require(w.a1.is_zero() && w.a3.is_zero(), "a1, a3 not cleared");
    c.require([w.a2.clone(), w.a4.clone(), w.a6.clone()] == k, "coefficients differ from kappa");
    for (n, e) in ["a2", "a4", "a6"].iter().zip(&k) {
        c.witness(n, e);
    }
    c
}

fn level1_delta(_: i64) -> Certificate {
    let mut c = Certificate::new("level1-delta");
    let d = tri!(c, parse_expr("Delta", &wst::level1_vars()));
    let img = tri!(c, wst::level1_image(&d));
    let (s3, p) = (MF7Elem::sigma3(), MF7Elem::p());
    let want = s3.pow(3).times(&p).negate().minus(&s3.pow(4).scale(&rat_int(8)));
    c.witness("image", &img);
    c.require(img == want, "image of Delta is not -s3^3 p - 8 s3^4");
    c
}

fn level1_delta_qexp(prec: i64) -> Certificate {
    let mut c = Certificate::new("level1-delta-qexp");
    let d = tri!(c, parse_expr("Delta", &wst::level1_vars()));
    let img = tri!(c, wst::level1_image(&d));
    let got = tri!(c, qexp_of_mf7(&img, prec));
    let t = tri!(c, tate::tate_coeffs(7, prec));
    c.require(got == tate::discriminant_product(7, prec), "differs from Delta(q^7)");
    c.require(got == t.delta, "differs from the Tate curve discriminant");
    c.witness("qexp", got.truncate(16));
    c
}

fn transfer(_: i64) -> Certificate {
    let mut c = Certificate::new("transfer");
    c.require(
        inv::transfer_mf7(&MF7Elem::one()) == MF7Elem::constant(rat_int(6)),
        "Tr(1) != 6",
    );
    let x = tri!(c, parse_expr("1/2*z1^3*z2^2*z3", &z_vars()));
    let x = tri!(c, MF7Elem::from_poly(&tri!(c, reduce_sigma2(&x))));
    let t = inv::transfer_mf7(&x);
    c.witness("Tr(z1^3*z2^2*z3/2)", &t);
    c.require(t == MF7Elem::sigma3().times(&MF7Elem::p()), "transfer is not s3*p");
    c
}

fn double_dual(_: i64) -> Certificate {
    let mut c = Certificate::new("double-dual");
    let m = hopf::mf12_comodule();
    let d = tri!(c, hopf::dual_comodule(&m));
    let dd = tri!(c, hopf::dual_comodule(&d));
    c.absorb(&d.check("dual"));
    c.absorb(&dd.check("double-dual"));
    match tri!(c, hopf::find_isomorphism(&m, &dd, 0)) {
        Some(f) => c.absorb(&hopf::comodule_map_check(&f, &m, &dd, 0)),
        None => c.fail("no isomorphism to the double dual"),
    }
    c
}

fn published_expansions(_: i64) -> Certificate {
    let mut c = Certificate::new("published-expansions");
    for cmp in tri!(c, inv::compare_published()) {
        c.witness(&cmp.name, format!("{} differing terms", cmp.mismatches.len()));
        for m in &cmp.mismatches {
            c.note(format!("{}: {} computed {} published {}", cmp.name, m.term, m.computed, m.published));
        }
    }
    c
}

fn degree_formula(_: i64) -> Certificate {
    let mut c = Certificate::new("degree-formula");
    for (n, d, q) in [(7u64, 48, 8), (2, 3, 3), (12, 96, 24)] {
        let (a, b) = tri!(c, inv::degree_formula(n));
        c.witness(&format!("n={}", n), format!("{} {}", a, b));
        c.require(a == d.into() && b == q.into(), format!("n = {}", n));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_unique_and_sorted() {
        let r = registry();
        let names: Vec<_> = r.iter().map(|s| s.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(names, sorted);
        assert!(r.len() >= 30);
    }

    #[test]
    fn cheap_checks_pass() {
        for name in ["mf7-rank", "zbasis-low-terms", "discriminant-identity", "degree-formula", "kappa"] {
            let s = registry().into_iter().find(|s| s.name == name).unwrap();
            let c = (s.run)(s.min_prec.unwrap_or(16).max(16));
            assert!(c.passed(), "{}: {:?}", name, c.failures);
        }
    }
}
