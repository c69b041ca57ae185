//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion that cannot hold as stated prints FAIL together with the
//! measured deviation; the run then asserts that exact deviation, so an
//! unexpected change still breaks the build.

use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use tmf7::exactalg::{
    mf7_rank, normal_monomials, parse_expr, rat, rat_int, reduce_sigma2, z_vars, CycQ6, MF7Elem,
    MultiPoly, Rat, Ring,
};
use tmf7::hopf::{self, Comodule};
use tmf7::invariants7 as inv;
use tmf7::modforms7::{self, qexp_of_mf7, z_basis};
use tmf7::tate::{self, TableCase};
use tmf7::weierstrass as wst;

enum Outcome {
    Pass(String),
    /// Fails as stated; the deviation was measured and matches the record.
    Documented(String),
    Fail(String),
}

fn ints(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| rat_int(x)).collect()
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass(detail.into())
    } else {
        Outcome::Fail(detail.into())
    }
}

fn z_basis_values() -> Outcome {
    let zb = match z_basis(50) {
        Ok(z) => z,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let low = |i: usize| (0..3).map(|e| zb.z(i).coeff(e)).collect::<Vec<_>>();
    let ok_low = low(1) == ints(&[0, 1, 0]) && low(2) == ints(&[0, -1, 1]) && low(3) == ints(&[1, 2, 3]);
    let integral = (1..=3).all(|i| zb.z(i).terms().all(|(_, c)| c.is_integer()));
    check(ok_low && integral, "constant terms 0,0,1; mod q^3 values exact; integral below q^50")
}

fn relation() -> Outcome {
    let zb = z_basis(25).unwrap();
    let s2 = parse_expr("z1*z2 + z2*z3 + z3*z1", &z_vars()).unwrap();
    check(zb.qexp_poly(&s2).valuation().is_none(), "sigma2 vanishes modulo q^25")
}

fn action() -> Outcome {
    let cert = modforms7::verify_action_via_eisenstein();
    let det = modforms7::base_change_matrix().det();
    let stated = modforms7::stated_base_change_det();
    assert!(cert.passed(), "{:?}", cert.failures);
    if det == stated {
        return Outcome::Pass("signed permutation; determinant as stated".into());
    }
    // recorded deviation: the exact determinant is half the stated value
    assert_eq!(det, stated.scale(&rat(1, 2)));
    assert_eq!(det, CycQ6::from_ints(-42, 84).scale(&rat(1, 27)));
    Outcome::Documented(format!(
        "action is the signed permutation, but det = {} = (1/27)(84*zeta6 - 42), half of the stated (2/27)(84*zeta6 - 42)",
        det
    ))
}

fn tate_series() -> Outcome {
    let (x, y) = tate::torsion_xy(7, 1, 0, 9).unwrap().rational().unwrap();
    let gx: Vec<Rat> = (1..=8).map(|e| x.coeff(e)).collect();
    let gy: Vec<Rat> = (1..=8).map(|e| y.coeff(e)).collect();
    let xy_ok = gx == ints(&[1, 2, 3, 4, 5, 7, 5, 9]) && gy == ints(&[0, 1, 3, 6, 10, 14, 22, 28]);
    let t = tate::tate_coeffs(1, 20).unwrap();
    let delta_ok = wst::c4_c6_delta(&t.weierstrass()).delta == tate::discriminant_product(1, 20);
    let g = wst::c4_c6_delta(&wst::generic_curve());
    let ident_ok = g.delta.scale(&rat_int(1728)) == g.c4.pow(3).minus(&g.c6.pow(2));
    check(
        xy_ok && delta_ok && ident_ok,
        format!("X, Y coefficients {}; Delta mod q^20 {}; 1728 Delta = c4^3 - c6^2 {}", xy_ok, delta_ok, ident_ok),
    )
}

fn lowest_terms() -> Outcome {
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = 0;
    for n in 3..=10u64 {
        for k in 0..n {
            for d in [0, 1] {
                if k == 0 && d == 0 {
                    continue;
                }
                let row = tate::lowest_term_table(n, k, d).unwrap();
                if !row.all_match() {
                    return Outcome::Fail(format!("row n={} k={} d={}: {:?}", n, k, d, row.computed));
                }
                seen.insert(format!("{:?}", row.case));
                rows += 1;
            }
        }
    }
    let all_cases = [TableCase::KZero, TableCase::BelowHalf, TableCase::Half, TableCase::AboveHalf]
        .iter()
        .all(|c| seen.contains(&format!("{:?}", c)));
    check(all_cases, format!("all four cases reproduced symbolically in v over {} rows", rows))
}

fn alpha_identification() -> Outcome {
    let got = tate::alpha_series(7, 1, 0, 25).unwrap().rational().unwrap();
    let ok = got
        .iter()
        .zip(wst::level7_alphas().iter())
        .all(|(g, w)| *g == qexp_of_mf7(w, 25).unwrap());
    check(ok, "alpha1, alpha2, alpha3 equal z1-z2+z3, z1z2+z1z3, z1z3^2 modulo q^25")
}

fn hopf_axioms() -> Outcome {
    let c = hopf::axioms_check();
    let detail = if c.passed() { "counit, coassociativity and conjugation hold".to_string() } else { c.failures.join("; ") };
    check(c.passed(), detail)
}

fn basis48() -> Outcome {
    let c = inv::basis48_certificate();
    check(
        c.passed(),
        format!(
            "quotient dimension {}, rank of images {}",
            c.get("quotient_dim").unwrap_or("?"),
            c.get("basis_rank").unwrap_or("?")
        ),
    )
}

fn s_basis() -> Outcome {
    let c = inv::s_basis_certificate();
    let (c2, c5) = inv::minor_certificates();
    let diffs: usize = inv::compare_published()
        .unwrap()
        .iter()
        .map(|x| x.mismatches.len())
        .sum();
    check(
        c.passed() && c2.passed() && c5.passed(),
        format!(
            "invariance, n6 identity, rational minor {}, mod-3 minor {} * a2; {} differing terms against the published expansions",
            c2.get("det").map(|d| if d == "0" { "zero" } else { "nonzero" }).unwrap_or("?"),
            c5.get("a2_coefficient").unwrap_or("?"),
            diffs
        ),
    )
}

fn coaction() -> Outcome {
    let c = inv::coaction_certificate();
    let detail = if c.passed() { "psi on all 8 invariants matches the table".to_string() } else { c.failures.join("; ") };
    check(c.passed(), detail)
}

fn splitting() -> Outcome {
    let c = inv::splitting_iso_check();
    check(
        c.passed(),
        format!("map check {}, 8 summands in degrees 0,2,4,6,4,6,8,6", c.get("sub:hopf.comodule_map").unwrap_or("?")),
    )
}

fn level_one() -> Outcome {
    let d = parse_expr("Delta", &wst::level1_vars()).unwrap();
    let img = wst::level1_image(&d).unwrap();
    let (s3, p) = (MF7Elem::sigma3(), MF7Elem::p());
    let image_ok = img == s3.pow(3).times(&p).negate().minus(&s3.pow(4).scale(&rat_int(8)));
    let x = reduce_sigma2(&parse_expr("1/2*z1^3*z2^2*z3", &z_vars()).unwrap()).unwrap();
    let transfer_ok = inv::transfer_mf7(&MF7Elem::from_poly(&x).unwrap()) == s3.times(&p);
    let q = qexp_of_mf7(&img, 25).unwrap();
    let literal = tate::discriminant_product(1, 25);
    if !(image_ok && transfer_ok) {
        return Outcome::Fail(format!("image {}, transfer {}", image_ok, transfer_ok));
    }
    if q == literal {
        return Outcome::Pass("image, transfer and q-expansion".into());
    }
    // recorded deviation: in the z-basis convention the image expands as Delta(q^7)
    assert_eq!(q, tate::discriminant_product(7, 25));
    assert_eq!(q, tate::tate_coeffs(7, 25).unwrap().delta);
    Outcome::Documented(format!(
        "image and transfer hold; q-expansion is Delta(q^7) = {}, not q prod(1-q^m)^24 (first differs at q^{})",
        q.truncate(15),
        q.first_difference(&literal, 25).unwrap()
    ))
}

fn arb_poly() -> impl Strategy<Value = MultiPoly<Rat>> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -4i64..5), 0..8).prop_map(|terms| {
        MultiPoly::from_terms(
            &z_vars(),
            terms.into_iter().map(|((a, b, c), k)| (vec![a, b, c], rat_int(k))),
        )
    })
}

fn arb_mf7() -> impl Strategy<Value = MF7Elem> {
    (0u32..5, prop::collection::vec(-4i64..5, 11)).prop_map(|(d, cs)| {
        let p = MultiPoly::from_terms(
            &z_vars(),
            normal_monomials(d).into_iter().zip(cs).map(|(m, c)| (m.to_vec(), rat_int(c))),
        );
        MF7Elem::from_poly(&p).unwrap()
    })
}

fn properties() -> Outcome {
    let mut failures = Vec::new();
    let mut runner = TestRunner::new(Config { cases: 50, failure_persistence: None, ..Config::default() });
    let r = runner.run(&arb_poly(), |p| {
        let once = reduce_sigma2(&p).unwrap();
        prop_assert_eq!(reduce_sigma2(&once).unwrap(), once);
        Ok(())
    });
    if let Err(e) = r {
        failures.push(format!("nf idempotence: {}", e));
    }
    let zb = z_basis(25).unwrap();
    let mut runner = TestRunner::new(Config { cases: 50, failure_persistence: None, ..Config::default() });
    let r = runner.run(&(arb_mf7(), arb_mf7()), |(a, b)| {
        prop_assert_eq!(zb.qexp(&a.times(&b)), zb.qexp(&a).mul(&zb.qexp(&b)).truncate(25));
        prop_assert_eq!(zb.qexp(&a.plus(&b)), zb.qexp(&a).add(&zb.qexp(&b)));
        Ok(())
    });
    if let Err(e) = r {
        failures.push(format!("qexp homomorphism: {}", e));
    }
    let m = hopf::mf12_comodule();
    let d = hopf::dual_comodule(&m).unwrap();
    let dd = hopf::dual_comodule(&d).unwrap();
    let comodules: Vec<(&str, Comodule)> = vec![
        ("trivial", Comodule::trivial("1", 0)),
        ("mf12", m.clone()),
        ("dual", d.clone()),
        ("double dual", dd.clone()),
        ("shifted", m.shifted(4)),
        ("splitting source", inv::splitting_source()),
        ("invariants", inv::coaction_on_s().unwrap()),
    ];
    for (name, c) in &comodules {
        if !(c.counit_ok().unwrap() && c.coassoc_ok().unwrap()) {
            failures.push(format!("comodule {}", name));
        }
    }
    if !(0..=12).all(|k| mf7_rank(k) == 2 * k as usize + 1) {
        failures.push("mf7 rank".into());
    }
    match hopf::find_isomorphism(&m, &dd, 0).unwrap() {
        Some(f) if hopf::comodule_map_check(&f, &m, &dd, 0).passed() => {}
        _ => failures.push("double dual".into()),
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("nf idempotence, qexp homomorphism on 50 pairs, {} comodules, ranks to 12, double dual", comodules.len())
        } else {
            failures.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("z-basis values", z_basis_values),
        ("relation sigma2 = 0", relation),
        ("action and base change", action),
        ("Tate series", tate_series),
        ("lowest-term table", lowest_terms),
        ("alpha identification", alpha_identification),
        ("Hopf algebroid axioms", hopf_axioms),
        ("48-element basis", basis48),
        ("invariant basis", s_basis),
        ("coaction table", coaction),
        ("splitting", splitting),
        ("level-one identities", level_one),
        ("property suites", properties),
    ];
    let mut unexpected = 0;
    let mut documented = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Outcome::Pass(d) => println!("criterion {:2} PASS {}: {}", i + 1, name, d),
            Outcome::Documented(d) => {
                documented += 1;
                println!("criterion {:2} FAIL {} (documented deviation): {}", i + 1, name, d);
            }
            Outcome::Fail(d) => {
                unexpected += 1;
                println!("criterion {:2} FAIL {}: {}", i + 1, name, d);
            }
        }
    }
    println!(
        "acceptance: {} pass, {} documented deviations, {} unexpected failures",
        criteria.len() - unexpected - documented,
        documented,
        unexpected
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
