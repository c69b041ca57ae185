//! Weight-one forms of level 7: Eisenstein series attached to the odd
//! characters mod 7, the integral basis z1, z2, z3, the action of the
//! generator t = [3] of (Z/7)^x, and its invariants.

use num_bigint::BigInt;

use crate::certificate::Certificate;
use crate::error::{AlgError, Result};
use crate::exactalg::{
    normal_monomials, rat, rat_int, smith_diagonal, CycQ6, MF7Elem, Matrix, MultiPoly, Rat, Ring,
    Scalar,
};
use crate::qseries::QSeries;

/// Residues 3^0, ..., 3^5 modulo 7.
const POWERS_OF_THREE: [u64; 6] = [1, 3, 2, 6, 4, 5];

/// A Dirichlet character mod 7 with values in Q(zeta6), fixed by its value
/// on the generator 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    at_generator: CycQ6,
    values: [CycQ6; 7],
}

impl Character {
    pub fn from_generator_value(x: CycQ6) -> Result<Self> {
        if x.pow(6) != CycQ6::one() {
            return Err(AlgError::InvalidArgument(format!(
                "{} is not a sixth root of unity",
                x
            )));
        }
        let mut values: [CycQ6; 7] = Default::default();
        for (i, r) in POWERS_OF_THREE.iter().enumerate() {
            values[*r as usize] = x.pow(i as u32);
        }
        Ok(Character {
            at_generator: x,
            values,
        })
    }

    /// The three odd characters, with values zeta6, -1 and 1 - zeta6 at 3.
    pub fn odd_characters() -> [Character; 3] {
        [
            CycQ6::zeta(),
            CycQ6::from_ints(-1, 0),
            CycQ6::from_ints(1, -1),
        ]
        .map(|x| Character::from_generator_value(x).expect("sixth roots of unity"))
    }

    pub fn at_generator(&self) -> &CycQ6 {
        &self.at_generator
    }

    /// Value at `n`, zero on multiples of 7.
    pub fn value(&self, n: u64) -> CycQ6 {
        self.values[(n % 7) as usize].clone()
    }

    pub fn is_odd(&self) -> bool {
        self.value(6) == CycQ6::from_ints(-1, 0)
    }

    /// `sum_{n=1}^{6} n * phi(n)`.
    pub fn weighted_sum(&self) -> CycQ6 {
        (1..=6u64).fold(CycQ6::zero(), |acc, n| {
            acc.plus(&self.value(n).times(&CycQ6::from_int(n as i64)))
        })
    }
}

/// `E(phi) = -(1/14) sum n phi(n) + sum_k (sum_{l | k} phi(l)) q^k`.
pub fn eisenstein_qexp(phi: &Character, prec: i64) -> Result<QSeries<CycQ6>> {
    if !phi.is_odd() {
        return Err(AlgError::InvalidArgument("character must be odd".into()));
    }
    let c0 = phi.weighted_sum().scale(&rat(-1, 14));
    let mut terms = vec![(0, c0)];
    for k in 1..prec.max(0) as u64 {
        let mut s = CycQ6::zero();
        for l in 1..=k {
            if k % l == 0 {
                s = s.plus(&phi.value(l));
            }
        }
        terms.push((k as i64, s));
    }
    Ok(QSeries::from_terms(terms, prec))
}

/// Coefficients expressing z1, z2, z3 (rows) in E(phi1), E(phi2), E(phi3).
pub fn base_change_matrix() -> Matrix<CycQ6> {
    let third = rat(1, 3);
    let e = |a: i64, b: i64| CycQ6::from_ints(a, b).scale(&third);
    Matrix::from_rows(vec![
        vec![e(-1, 3), e(2, 0), e(2, -3)],
        vec![e(-2, -1), e(2, 0), e(-3, 1)],
        vec![e(3, -2), e(2, 0), e(1, 2)],
    ])
}

/// The value (2/27)(84 zeta6 - 42) quoted for the determinant of the base
/// change matrix. The exact determinant is half of it.
pub fn stated_base_change_det() -> CycQ6 {
    CycQ6::from_ints(-42, 84).scale(&rat(2, 27))
}

/// Summand contributed by a divisor `l` to the q^k coefficient of `z_i`,
/// indexed by `l mod 7`.
pub fn divisor_summand_table(i: usize) -> [CycQ6; 7] {
    let b = base_change_matrix();
    let chars = Character::odd_characters();
    let mut out: [CycQ6; 7] = Default::default();
    for (r, slot) in out.iter_mut().enumerate() {
        *slot = (0..3).fold(CycQ6::zero(), |acc, j| {
            acc.plus(&b.get(i - 1, j).times(&chars[j].value(r as u64)))
        });
    }
    out
}

/// q-expansions of z1, z2, z3 with integer coefficients.
#[derive(Clone, Debug)]
pub struct ZBasis {
    prec: i64,
    z: [QSeries<Rat>; 3],
}

impl ZBasis {
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Series of `z_i`, i in 1..=3.
    pub fn z(&self, i: usize) -> &QSeries<Rat> {
        &self.z[i - 1]
    }

    pub fn qexp(&self, e: &MF7Elem) -> QSeries<Rat> {
        self.qexp_poly(e.poly())
    }

    /// Evaluates any polynomial in z1, z2, z3 (normal form not required).
    pub fn qexp_poly(&self, p: &MultiPoly<Rat>) -> QSeries<Rat> {
        let one = QSeries::one(self.prec);
        let images: Vec<QSeries<Rat>> = p
            .vars()
            .names()
            .iter()
            .map(|n| match n.as_str() {
                "z1" => self.z[0].clone(),
                "z2" => self.z[1].clone(),
                "z3" => self.z[2].clone(),
                _ => QSeries::zero(self.prec),
            })
            .collect();
        p.eval(&images, &one, |c| QSeries::constant(c.clone(), self.prec))
    }
}

pub fn z_basis(prec: i64) -> Result<ZBasis> {
    if prec < 3 {
        return Err(AlgError::InvalidArgument(format!("precision {} < 3", prec)));
    }
    let b = base_change_matrix();
    let es: Vec<QSeries<CycQ6>> = Character::odd_characters()
        .iter()
        .map(|phi| eisenstein_qexp(phi, prec))
        .collect::<Result<_>>()?;
    let mut z: Vec<QSeries<Rat>> = Vec::new();
    for i in 0..3 {
        let mut s = QSeries::zero(prec);
        for (j, e) in es.iter().enumerate() {
            s = s.add(&e.scale(b.get(i, j)));
        }
        let zi = s.try_map_coeffs(|c| {
            if !c.is_rational() || !c.a.is_integer() {
                Err(AlgError::NotIntegral(format!("coefficient {} of z{}", c, i + 1)))
            } else {
                Ok(c.a.clone())
            }
        })?;
        z.push(zi);
    }
    let [z1, z2, z3]: [QSeries<Rat>; 3] = z.try_into().expect("three series");
    Ok(ZBasis {
        prec,
        z: [z1, z2, z3],
    })
}

pub fn qexp_of_mf7(e: &MF7Elem, prec: i64) -> Result<QSeries<Rat>> {
    Ok(z_basis(prec.max(3))?.qexp(e).truncate(prec))
}

/// The signed permutation z1 -> -z3, z2 -> -z1, z3 -> -z2.
pub fn action_tau(e: &MF7Elem) -> MF7Elem {
    let images = [
        MF7Elem::z(3).negate(),
        MF7Elem::z(1).negate(),
        MF7Elem::z(2).negate(),
    ];
    e.poly()
        .eval(&images, &MF7Elem::one(), |c| MF7Elem::constant(c.clone()))
}

pub fn tau_images() -> [(usize, i64, usize); 3] {
    // (source index, sign, target index)
    [(1, -1, 3), (2, -1, 1), (3, -1, 2)]
}

/// Conjugates the diagonal character action on the Eisenstein basis into
/// the z-basis and compares with the signed permutation.
pub fn verify_action_via_eisenstein() -> Certificate {
    let mut cert = Certificate::new("action");
    let b = base_change_matrix();
    let det = b.det();
    cert.witness("base_change_det", &det);
    cert.require(!det.is_zero(), "base change matrix is singular");
    let stated = stated_base_change_det();
    cert.witness("stated_det", &stated);
    if det != stated {
        let ratio = det.times(&stated.try_inv().expect("nonzero"));
        cert.note(format!(
            "the exact determinant is {} times the commonly quoted value (2/27)(84*zeta6 - 42); only its nonvanishing matters",
            ratio
        ));
    }
    let binv = match b.inverse() {
        Ok(m) => m,
        Err(e) => {
            cert.fail(e);
            return cert;
        }
    };
    let chars = Character::odd_characters();
    let mut d = Matrix::<CycQ6>::zeros(3, 3);
    for (j, c) in chars.iter().enumerate() {
        d.set(j, j, c.at_generator().clone());
    }
    // t.z_i = sum_k T[i][k] z_k
    let t = b.mul(&d).and_then(|m| m.mul(&binv)).expect("3x3 products");
    let zeta_free = (0..3).all(|i| (0..3).all(|k| t.get(i, k).is_rational()));
    cert.require(zeta_free, "conjugated matrix has zeta6 entries");
    let mut expected = Matrix::<CycQ6>::zeros(3, 3);
    for (src, sign, dst) in tau_images() {
        expected.set(src - 1, dst - 1, CycQ6::from_int(sign));
    }
    for i in 0..3 {
        let img: Vec<String> = (0..3)
            .filter(|&k| !t.get(i, k).is_zero())
            .map(|k| format!("{}*z{}", t.get(i, k), k + 1))
            .collect();
        cert.witness(&format!("t.z{}", i + 1), img.join(" + "));
    }
    cert.require(t == expected, "conjugated action is not the signed permutation");
    let tau6 = (0..6).fold(MF7Elem::<Rat>::z(1), |acc, _| action_tau(&acc));
    cert.require(tau6 == MF7Elem::z(1), "tau^6 != id on z1");
    cert.note("convention: t.z1 = -z3, t.z2 = -z1, t.z3 = -z2; the inverse assignment t.z3 = -z1, t.z1 = -z2, t.z2 = -z3 also appears in the literature and describes t^-1");
    cert
}

/// Coordinates of a homogeneous degree-k element in the normal monomials.
pub fn mf7_coords(e: &MF7Elem, k: u32) -> Vec<Rat> {
    normal_monomials(k)
        .iter()
        .map(|m| e.poly().coeff(m))
        .collect()
}

/// The elements sigma1^a sigma3^b p^eps of degree k (a + 3b + 3 eps = k)
/// that are invariant, i.e. with a + b + eps even.
pub fn invariant_monomials(k: u32) -> Vec<((u32, u32, u32), MF7Elem)> {
    let (s1, s3, p) = (MF7Elem::sigma1(), MF7Elem::sigma3(), MF7Elem::p());
    let mut out = Vec::new();
    for eps in 0..=1u32 {
        for b in 0..=k / 3 {
            if 3 * b + 3 * eps > k {
                continue;
            }
            let a = k - 3 * b - 3 * eps;
            if (a + b + eps) % 2 == 1 {
                continue;
            }
            let e = s1.pow(a).times(&s3.pow(b)).times(&p.pow(eps));
            out.push(((a, b, eps), e));
        }
    }
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out
}

/// Certificate that the invariants of degree k are exactly the Z-span of
/// the monomials in sigma1, sigma3, p.
pub fn invariant_certificate(k: u32) -> Certificate {
    let mut cert = Certificate::new(&format!("invariants-degree-{}", k));
    cert.with_degree_bound(k as i64);
    let mons = normal_monomials(k);
    let n = mons.len();
    // columns: tau(m) - m
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for m in &mons {
        let e = MF7Elem::monomial(*m, rat_int(1));
        cols.push(mf7_coords(&action_tau(&e).minus(&e), k));
    }
    let a = Matrix::from_rows((0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
    let kernel_dim = a.nullspace().len();
    let formula = invariant_monomials(k);
    cert.witness("kernel_dim", kernel_dim);
    cert.witness("formula_count", formula.len());
    cert.witness(
        "formula",
        formula
            .iter()
            .map(|((a, b, e), _)| format!("s1^{}*s3^{}*p^{}", a, b, e))
            .collect::<Vec<_>>()
            .join(", "),
    );
    for ((a, b, e), f) in &formula {
        cert.require(
            action_tau(f) == *f,
            format!("s1^{}*s3^{}*p^{} is not invariant", a, b, e),
        );
    }
    let fm = Matrix::from_rows(formula.iter().map(|(_, f)| mf7_coords(f, k)).collect());
    let rank = if formula.is_empty() { 0 } else { fm.rank() };
    cert.require(rank == formula.len(), "formula elements are dependent");
    cert.require(rank == kernel_dim, format!("formula rank {} != kernel dim {}", rank, kernel_dim));
    if !formula.is_empty() {
        let int_rows: Vec<Vec<BigInt>> = fm
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|c| c.to_integer()).collect())
            .collect();
        let integral = fm.to_rows().iter().flatten().all(|c| c.is_integer());
        cert.require(integral, "formula elements are not integral");
        let diag = smith_diagonal(&int_rows);
        let saturated = diag.iter().all(|d| *d == BigInt::from(1));
        cert.witness(
            "smith_diagonal",
            diag.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
        );
        cert.require(saturated, "formula span is not saturated in Z^n");
    }
    cert
}

pub fn invariant_basis(k: u32) -> Result<Vec<MF7Elem>> {
    let cert = invariant_certificate(k);
    if !cert.passed() {
        return Err(AlgError::CheckFailed(cert.failures.join("; ")));
    }
    Ok(invariant_monomials(k).into_iter().map(|(_, e)| e).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_sums() {
        let [p1, p2, p3] = Character::odd_characters();
        assert_eq!(p1.weighted_sum(), CycQ6::from_ints(-2, -4));
        assert_eq!(p2.weighted_sum(), CycQ6::from_ints(-7, 0));
        assert_eq!(p3.weighted_sum(), CycQ6::from_ints(-6, 4));
        for p in [&p1, &p2, &p3] {
            for a in 1..7u64 {
                for b in 1..7u64 {
                    assert_eq!(p.value(a * b), p.value(a).times(&p.value(b)));
                }
            }
        }
    }

    #[test]
    fn z_basis_low_terms() {
        let zb = z_basis(50).unwrap();
        let r = |v: &[i64]| v.iter().map(|&x| rat_int(x)).collect::<Vec<_>>();
        assert_eq!(zb.z(1).coeffs_from(0)[..3], r(&[0, 1, 0])[..]);
        assert_eq!(zb.z(2).coeffs_from(0)[..3], r(&[0, -1, 1])[..]);
        assert_eq!(zb.z(3).coeffs_from(0)[..3], r(&[1, 2, 3])[..]);
    }

    #[test]
    fn summand_table_for_z1() {
        let t = divisor_summand_table(1);
        let want = [0, 1, -1, -2, 2, 1, -1].map(|x| CycQ6::from_ints(x, 0));
        assert_eq!(t, want);
    }

    #[test]
    fn determinant_oracle() {
        // cofactor expansion of 27 * B by hand in Q[x]/(x^2 - x + 1)
        let m = [[(-1, 3), (2, 0), (2, -3)], [(-2, -1), (2, 0), (-3, 1)], [(3, -2), (2, 0), (1, 2)]];
        let c = |i: usize, j: usize| CycQ6::from_ints(m[i][j].0, m[i][j].1);
        let minor = |i: usize, j: usize, k: usize, l: usize| c(i, j).times(&c(k, l)).minus(&c(i, l).times(&c(k, j)));
        let det27 = c(0, 0).times(&minor(1, 1, 2, 2))
            .minus(&c(0, 1).times(&minor(1, 0, 2, 2)))
            .plus(&c(0, 2).times(&minor(1, 0, 2, 1)));
        assert_eq!(det27, CycQ6::from_ints(-42, 84));
        assert_eq!(base_change_matrix().det(), det27.scale(&rat(1, 27)));
        assert_eq!(stated_base_change_det(), det27.scale(&rat(2, 27)));
    }

    #[test]
    fn tau_examples() {
        let s1 = MF7Elem::<Rat>::sigma1();
        assert_eq!(action_tau(&s1), s1.negate());
        let p = MF7Elem::<Rat>::p();
        assert_eq!(action_tau(&p), p.negate());
        assert!(verify_action_via_eisenstein().passed());
    }

    #[test]
    fn invariants_small_degrees() {
        assert_eq!(invariant_basis(1).unwrap().len(), 0);
        let b2 = invariant_basis(2).unwrap();
        assert_eq!(b2, vec![MF7Elem::sigma1().pow(2)]);
        assert_eq!(invariant_basis(6).unwrap().len(), 5);
        for k in 0..=8 {
            assert!(invariant_certificate(k).passed(), "degree {}", k);
        }
    }

    #[test]
    fn relation_vanishes() {
        let zb = z_basis(25).unwrap();
        let v = crate::exactalg::z_vars();
        let s2 = crate::exactalg::parse_expr("z1*z2+z2*z3+z3*z1", &v).unwrap();
        assert!(zb.qexp_poly(&s2).is_zero());
    }
}
