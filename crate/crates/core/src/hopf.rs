//! The graded Hopf algebroid `(A, Gamma) = (Z_(3)[a2, a4, a6], A[r])` of
//! cubic curves `y^2 = x^3 + a2 x^2 + a4 x + a6` under `x -> x + r`, and
//! comodules over it.
//!
//! `Gamma (x)_A Gamma` is modelled as `A[r1, r2]`: the left factor's `r` is
//! `r1`, the right factor's `r` is `r2`, and `a_i` in the right factor is
//! `eta_R(a_i)` evaluated at `r1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::certificate::Certificate;
use crate::error::{AlgError, Result};
use crate::exactalg::{det_laplace, Loc3, Matrix, MultiPoly, Rat, Ring, Scalar, Vars};

pub type Elem = MultiPoly<Loc3>;

const A_NAMES: [&str; 3] = ["a2", "a4", "a6"];

pub fn base_vars() -> Arc<Vars> {
    static V: OnceLock<Arc<Vars>> = OnceLock::new();
    V.get_or_init(|| Vars::new(&[("a2", 2), ("a4", 4), ("a6", 6)]))
        .clone()
}

pub fn gamma_vars() -> Arc<Vars> {
    static V: OnceLock<Arc<Vars>> = OnceLock::new();
    V.get_or_init(|| Vars::new(&[("a2", 2), ("a4", 4), ("a6", 6), ("r", 2)]))
        .clone()
}

pub fn gamma2_vars() -> Arc<Vars> {
    static V: OnceLock<Arc<Vars>> = OnceLock::new();
    V.get_or_init(|| Vars::new(&[("a2", 2), ("a4", 4), ("a6", 6), ("r1", 2), ("r2", 2)]))
        .clone()
}

fn gamma3_vars() -> Arc<Vars> {
    static V: OnceLock<Arc<Vars>> = OnceLock::new();
    V.get_or_init(|| {
        Vars::new(&[("a2", 2), ("a4", 4), ("a6", 6), ("r1", 2), ("r2", 2), ("r3", 2)])
    })
    .clone()
}

fn g(vars: &Arc<Vars>, name: &str) -> Elem {
    MultiPoly::var(vars, name).expect("known generator")
}

fn c(vars: &Arc<Vars>, n: i64) -> Elem {
    MultiPoly::from_int(vars, n)
}

/// Coefficients of `f(x + r)` where `f = x^3 + a2 x^2 + a4 x + a6`, given
/// `a2, a4, a6, r` in any ring.
pub fn shift_cubic<T: Ring>(a: &[T; 3], r: &T) -> [T; 3] {
    let [a2, a4, a6] = a;
    let k = |n| r.int_like(n);
    [
        a2.plus(&k(3).times(r)),
        a4.plus(&k(2).times(r).times(a2)).plus(&k(3).times(&r.pow(2))),
        a6.plus(&r.times(a4)).plus(&r.pow(2).times(a2)).plus(&r.pow(3)),
    ]
}

/// Rat polynomial to Loc3 polynomial.
pub fn to_loc3(p: &MultiPoly<Rat>) -> Result<Elem> {
    p.try_map_coeffs(|c| Loc3::new(c.clone()))
}

/// Evaluates an `A`-element (or a `Gamma`-element) at images of `a2, a4,
/// a6` (and `r`) living over `target`.
fn eval_on(p: &Elem, images: &BTreeMap<&str, Elem>, target: &Arc<Vars>) -> Elem {
    let imgs: Vec<Elem> = p
        .vars()
        .names()
        .iter()
        .map(|n| {
            images
                .get(n.as_str())
                .cloned()
                .unwrap_or_else(|| g(target, n))
        })
        .collect();
    p.eval(&imgs, &MultiPoly::one(target), |c| MultiPoly::constant(target, c.clone()))
}

pub fn eta_l(p: &Elem) -> Result<Elem> {
    p.uses_only(&A_NAMES)?;
    p.embed_into(&gamma_vars())
}

pub fn eta_r(p: &Elem) -> Result<Elem> {
    p.uses_only(&A_NAMES)?;
    let gv = gamma_vars();
    let a = [g(&gv, "a2"), g(&gv, "a4"), g(&gv, "a6")];
    let s = shift_cubic(&a, &g(&gv, "r"));
    let images = BTreeMap::from([("a2", s[0].clone()), ("a4", s[1].clone()), ("a6", s[2].clone())]);
    Ok(eval_on(p, &images, &gv))
}

pub fn epsilon(x: &Elem) -> Result<Elem> {
    let x = x.embed_into(&gamma_vars())?;
    let i = gamma_vars().index("r").expect("r");
    x.subs(i, &MultiPoly::zero(&gamma_vars())).embed_into(&base_vars())
}

/// Comultiplication `r -> r1 + r2`, `a_i -> a_i`.
pub fn psi(x: &Elem) -> Result<Elem> {
    let x = x.embed_into(&gamma_vars())?;
    let v2 = gamma2_vars();
    let images = BTreeMap::from([("r", g(&v2, "r1").plus(&g(&v2, "r2")))]);
    Ok(eval_on(&x, &images, &v2))
}

/// `x (x) 1` inside `A[r1, r2]`.
pub fn left_factor(x: &Elem) -> Result<Elem> {
    let x = x.embed_into(&gamma_vars())?;
    let v2 = gamma2_vars();
    Ok(eval_on(&x, &BTreeMap::from([("r", g(&v2, "r1"))]), &v2))
}

/// `1 (x) x` inside `A[r1, r2]`.
pub fn right_factor(x: &Elem) -> Result<Elem> {
    let x = x.embed_into(&gamma_vars())?;
    let v2 = gamma2_vars();
    let a = [g(&v2, "a2"), g(&v2, "a4"), g(&v2, "a6")];
    let s = shift_cubic(&a, &g(&v2, "r1"));
    let images = BTreeMap::from([
        ("a2", s[0].clone()),
        ("a4", s[1].clone()),
        ("a6", s[2].clone()),
        ("r", g(&v2, "r2")),
    ]);
    Ok(eval_on(&x, &images, &v2))
}

/// Conjugation: `r -> -r`, `a_i -> eta_R(a_i)`.
pub fn conj(x: &Elem) -> Result<Elem> {
    let x = x.embed_into(&gamma_vars())?;
    let gv = gamma_vars();
    let a = [g(&gv, "a2"), g(&gv, "a4"), g(&gv, "a6")];
    let s = shift_cubic(&a, &g(&gv, "r"));
    let images = BTreeMap::from([
        ("a2", s[0].clone()),
        ("a4", s[1].clone()),
        ("a6", s[2].clone()),
        ("r", g(&gv, "r").negate()),
    ]);
    Ok(eval_on(&x, &images, &gv))
}

fn set_r(x: &Elem, from: &str, to: Option<&str>) -> Elem {
    let v = x.vars().clone();
    let i = v.index(from).expect("generator present");
    let img = match to {
        Some(n) => g(&v, n),
        None => MultiPoly::zero(&v),
    };
    x.subs(i, &img)
}

/// Counit on the left factor of `A[r1, r2]`, landing in `Gamma`.
fn counit_left(x: &Elem) -> Result<Elem> {
    set_r(&set_r(x, "r1", None), "r2", Some("r1"))
        .embed_into(&gamma2_vars())
        .and_then(|p| rename_r1_to_r(&p))
}

fn counit_right(x: &Elem) -> Result<Elem> {
    rename_r1_to_r(&set_r(x, "r2", None))
}

fn rename_r1_to_r(x: &Elem) -> Result<Elem> {
    let gv = gamma_vars();
    let imgs: Vec<Elem> = x
        .vars()
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "r1" => g(&gv, "r"),
            "r2" => MultiPoly::zero(&gv),
            other => g(&gv, other),
        })
        .collect();
    Ok(x.eval(&imgs, &MultiPoly::one(&gv), |c| MultiPoly::constant(&gv, c.clone())))
}

fn into_triple(x: &Elem, map: [(&str, Elem); 2]) -> Elem {
    let v3 = gamma3_vars();
    let lookup: BTreeMap<&str, Elem> = map.into_iter().collect();
    let imgs: Vec<Elem> = x
        .vars()
        .names()
        .iter()
        .map(|n| lookup.get(n.as_str()).cloned().unwrap_or_else(|| g(&v3, n)))
        .collect();
    x.eval(&imgs, &MultiPoly::one(&v3), |c| MultiPoly::constant(&v3, c.clone()))
}

/// `(psi (x) 1) psi` and `(1 (x) psi) psi` as elements of `A[r1, r2, r3]`.
fn coassoc_sides(x: &Elem) -> Result<(Elem, Elem)> {
    let v3 = gamma3_vars();
    let p = psi(x)?;
    let lhs = into_triple(&p, [("r1", g(&v3, "r1").plus(&g(&v3, "r2"))), ("r2", g(&v3, "r3"))]);
    let rhs = into_triple(&p, [("r1", g(&v3, "r1")), ("r2", g(&v3, "r2").plus(&g(&v3, "r3")))]);
    Ok((lhs, rhs))
}

fn generators() -> Vec<(&'static str, Elem)> {
    let gv = gamma_vars();
    ["a2", "a4", "a6", "r"].iter().map(|n| (*n, g(&gv, n))).collect()
}

pub fn axioms_check() -> Certificate {
    let mut cert = Certificate::new("hopf.axioms");
    let run = |cert: &mut Certificate| -> Result<()> {
        let bv = base_vars();
        for n in A_NAMES {
            let a = g(&bv, n);
            let er = eta_r(&a)?;
            cert.require(epsilon(&eta_l(&a)?)? == a, format!("eps(eta_L({})) = {}", n, n));
            cert.require(epsilon(&er)? == a, format!("eps(eta_R({})) = {}", n, n));
            cert.require(conj(&eta_l(&a)?)? == er, format!("c(eta_L({})) = eta_R({})", n, n));
            cert.require(conj(&er)? == eta_l(&a)?, format!("c(eta_R({})) = {}", n, n));
            // psi(eta_R(a)) = 1 (x) eta_R(a)
            cert.require(
                psi(&er)? == right_factor(&er)?,
                format!("psi(eta_R({})) = 1 (x) eta_R({})", n, n),
            );
            cert.witness(&format!("eta_R({})", n), &er);
        }
        for (n, x) in generators() {
            cert.require(conj(&conj(&x)?)? == x, format!("c(c({})) = {}", n, n));
            let p = psi(&x)?;
            cert.require(counit_left(&p)? == x, format!("(eps (x) 1) psi({}) = {}", n, n));
            cert.require(counit_right(&p)? == x, format!("(1 (x) eps) psi({}) = {}", n, n));
            let (l, r) = coassoc_sides(&x)?;
            cert.require(l == r, format!("coassociativity on {}", n));
        }
        let r = g(&gamma_vars(), "r");
        cert.witness("psi(r)", psi(&r)?);
        Ok(())
    };
    if let Err(e) = run(&mut cert) {
        cert.fail(e);
    }
    cert
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElem {
    pub name: String,
    pub degree: i64,
}

/// A comodule that is free over `A` on `basis`; column `j` of `coaction`
/// lists `psi(b_j) = sum_i coaction[i][j] (x) b_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Comodule {
    pub basis: Vec<BasisElem>,
    pub coaction: Vec<Vec<Elem>>,
}

fn matmul(a: &[Vec<Elem>], b: &[Vec<Elem>], vars: &Arc<Vars>) -> Vec<Vec<Elem>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..inner).fold(MultiPoly::zero(vars), |acc, k| acc.plus(&a[i][k].times(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

fn map_matrix(m: &[Vec<Elem>], f: impl Fn(&Elem) -> Result<Elem>) -> Result<Vec<Vec<Elem>>> {
    m.iter()
        .map(|row| row.iter().map(&f).collect::<Result<Vec<_>>>())
        .collect()
}

impl Comodule {
    pub fn new(basis: Vec<BasisElem>, coaction: Vec<Vec<Elem>>) -> Result<Self> {
        let n = basis.len();
        if coaction.len() != n || coaction.iter().any(|r| r.len() != n) {
            return Err(AlgError::InvalidArgument(format!(
                "coaction must be {}x{}",
                n, n
            )));
        }
        let coaction = map_matrix(&coaction, |x| x.embed_into(&gamma_vars()))?;
        Ok(Comodule { basis, coaction })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.basis.iter().map(|b| b.degree).collect()
    }

    /// A rank-one comodule with trivial coaction.
    pub fn trivial(name: &str, degree: i64) -> Self {
        Comodule {
            basis: vec![BasisElem { name: name.into(), degree }],
            coaction: vec![vec![MultiPoly::one(&gamma_vars())]],
        }
    }

    /// `M[k]`: every basis degree raised by k, names tagged with `[k]`.
    pub fn shifted(&self, k: i64) -> Self {
        Comodule {
            basis: self
                .basis
                .iter()
                .map(|b| BasisElem {
                    name: format!("{}[{}]", b.name, k),
                    degree: b.degree + k,
                })
                .collect(),
            coaction: self.coaction.clone(),
        }
    }

    pub fn direct_sum(parts: &[Comodule]) -> Self {
        let n: usize = parts.iter().map(|p| p.rank()).sum();
        let gv = gamma_vars();
        let mut coaction = vec![vec![MultiPoly::zero(&gv); n]; n];
        let mut basis = Vec::with_capacity(n);
        let mut off = 0;
        for p in parts {
            for i in 0..p.rank() {
                for j in 0..p.rank() {
                    coaction[off + i][off + j] = p.coaction[i][j].clone();
                }
            }
            basis.extend(p.basis.iter().cloned());
            off += p.rank();
        }
        Comodule { basis, coaction }
    }

    pub fn counit_ok(&self) -> Result<bool> {
        for (i, row) in self.coaction.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let e = epsilon(x)?;
                let want = if i == j { 1 } else { 0 };
                if e != c(&base_vars(), want) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn coassoc_ok(&self) -> Result<bool> {
        let v2 = gamma2_vars();
        let lhs = map_matrix(&self.coaction, psi)?;
        let right = map_matrix(&self.coaction, right_factor)?;
        let left = map_matrix(&self.coaction, left_factor)?;
        Ok(lhs == matmul(&right, &left, &v2))
    }

    /// Entry `(i, j)` must be homogeneous of degree `deg b_j - deg b_i`.
    pub fn homogeneity_failures(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for (i, row) in self.coaction.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let d = self.basis[j].degree - self.basis[i].degree;
                if !x.is_zero() && !x.is_homogeneous_of(d) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    pub fn check(&self, name: &str) -> Certificate {
        let mut cert = Certificate::new(name);
        cert.witness("rank", self.rank());
        match (self.counit_ok(), self.coassoc_ok()) {
            (Ok(a), Ok(b)) => {
                cert.require(a, "counit");
                cert.require(b, "coassociativity");
            }
            (Err(e), _) | (_, Err(e)) => cert.fail(e),
        }
        let bad = self.homogeneity_failures();
        cert.require(bad.is_empty(), format!("inhomogeneous entries {:?}", bad));
        cert
    }

    /// `psi(b_j)` written out, lowest-degree coefficients first, e.g. `1 (x) w3 + 2*r (x) w2 + r^2 (x) w1`.
    pub fn describe(&self, j: usize) -> String {
        let mut idx: Vec<usize> = (0..self.rank())
            .filter(|&i| !self.coaction[i][j].is_zero())
            .collect();
        idx.sort_by_key(|&i| (self.basis[j].degree - self.basis[i].degree, i));
        let parts: Vec<String> = idx
            .into_iter()
            .map(|i| {
                let x = self.coaction[i][j].to_string();
                let x = if x.contains(' ') || x.starts_with('-') { format!("({})", x) } else { x };
                format!("{} (x) {}", x, self.basis[i].name)
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Comodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, b) in self.basis.iter().enumerate() {
            writeln!(f, "{} (deg {}) -> {}", b.name, b.degree, self.describe(j))?;
        }
        Ok(())
    }
}

impl Serialize for Comodule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .coaction
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let mut st = s.serialize_struct("Comodule", 2)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("coaction", &rows)?;
        st.end()
    }
}

/// The rank-3 comodule `A w1 + A w2 + A w3` with `w_i = r^(i-1)`.
pub fn mf12_comodule() -> Comodule {
    let gv = gamma_vars();
    let r = g(&gv, "r");
    let (o, z) = (c(&gv, 1), c(&gv, 0));
    let basis = (1..=3)
        .map(|i| BasisElem {
            name: format!("w{}", i),
            degree: 2 * (i as i64 - 1),
        })
        .collect();
    let coaction = vec![
        vec![o.clone(), r.clone(), r.pow(2)],
        vec![z.clone(), o.clone(), r.scale(&Loc3::from_int(2))],
        vec![z.clone(), z, o],
    ];
    Comodule { basis, coaction }
}

/// The dual comodule: conjugate-transposed coaction, negated degrees.
pub fn dual_comodule(m: &Comodule) -> Result<Comodule> {
    let n = m.rank();
    let mut coaction = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(conj(&m.coaction[j][i])?);
        }
        coaction.push(row);
    }
    let basis = m
        .basis
        .iter()
        .map(|b| BasisElem {
            name: format!("{}*", b.name),
            degree: -b.degree,
        })
        .collect();
    Ok(Comodule { basis, coaction })
}

/// Checks that `f` (rows indexed by `n`'s basis, columns by `m`'s, entries
/// in `A`) is a map of comodules `m -> n[shift]`.
pub fn comodule_map_check(f: &[Vec<Elem>], m: &Comodule, n: &Comodule, shift: i64) -> Certificate {
    let mut cert = Certificate::new("hopf.comodule_map");
    cert.witness("shift", shift);
    if f.len() != n.rank() || f.iter().any(|r| r.len() != m.rank()) {
        cert.fail(format!("map must be {}x{}", n.rank(), m.rank()));
        return cert;
    }
    let run = |cert: &mut Certificate| -> Result<()> {
        let f = map_matrix(f, |x| {
            x.uses_only(&A_NAMES)?;
            x.embed_into(&base_vars())
        })?;
        for (k, row) in f.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let d = m.basis[j].degree - (n.basis[k].degree + shift);
                cert.require(
                    x.is_zero() || x.is_homogeneous_of(d),
                    format!("entry ({}, {}) not of degree {}", k, j, d),
                );
            }
        }
        let gv = gamma_vars();
        let fl = map_matrix(&f, eta_l)?;
        let fr = map_matrix(&f, eta_r)?;
        let lhs = matmul(&n.coaction, &fl, &gv);
        let rhs = matmul(&fr, &m.coaction, &gv);
        let commutes = lhs == rhs;
        cert.require(commutes, "coaction does not commute with the map");
        cert.witness("commutes", commutes);
        if f.len() == f[0].len() {
            let det = det_laplace(&f, &MultiPoly::one(&base_vars()));
            let unit = det.is_constant() && det.constant_coeff().is_unit();
            cert.witness("det", &det);
            cert.witness("invertible", unit);
            cert.require(unit, "determinant is not a unit");
        } else {
            cert.witness("invertible", false);
            cert.fail("map is not square");
        }
        Ok(())
    };
    if let Err(e) = run(&mut cert) {
        cert.fail(e);
    }
    cert
}

/// Monomials of `A` in the given degree.
pub fn base_monomials(d: i64) -> Vec<Elem> {
    let bv = base_vars();
    let mut out = Vec::new();
    if d < 0 || d % 2 != 0 {
        return out;
    }
    for k in 0..=d / 6 {
        for j in 0..=(d - 6 * k) / 4 {
            let rest = d - 6 * k - 4 * j;
            let i = rest / 2;
            out.push(MultiPoly::monomial(&bv, vec![i as u32, j as u32, k as u32], Loc3::one()));
        }
    }
    out
}

/// A rational basis of all homogeneous comodule maps `m -> n[shift]`.
pub fn solve_comodule_maps(m: &Comodule, n: &Comodule, shift: i64) -> Result<Vec<Vec<Vec<Elem>>>> {
    let bv = base_vars();
    let gv = gamma_vars();
    let (rn, rm) = (n.rank(), m.rank());
    // unknowns: (k, j, monomial)
    let mut unknowns = Vec::new();
    for k in 0..rn {
        for j in 0..rm {
            let d = m.basis[j].degree - (n.basis[k].degree + shift);
            for mono in base_monomials(d) {
                unknowns.push((k, j, mono));
            }
        }
    }
    let mut columns: Vec<BTreeMap<(usize, usize, Vec<u32>), Rat>> = Vec::new();
    for (k, j, mono) in &unknowns {
        let mut f = vec![vec![MultiPoly::zero(&bv); rm]; rn];
        f[*k][*j] = mono.clone();
        let fl = map_matrix(&f, eta_l)?;
        let fr = map_matrix(&f, eta_r)?;
        let lhs = matmul(&n.coaction, &fl, &gv);
        let rhs = matmul(&fr, &m.coaction, &gv);
        let mut col = BTreeMap::new();
        for i in 0..rn {
            for jj in 0..rm {
                let diff = lhs[i][jj].minus(&rhs[i][jj]);
                for (e, c) in diff.terms() {
                    col.insert((i, jj, e.clone()), c.value().clone());
                }
            }
        }
        columns.push(col);
    }
    let keys: Vec<_> = {
        let mut ks: Vec<_> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
        ks.sort();
        ks.dedup();
        ks
    };
    let rows: Vec<Vec<Rat>> = keys
        .iter()
        .map(|key| {
            columns
                .iter()
                .map(|c| c.get(key).cloned().unwrap_or_else(|| Rat::from_int(0)))
                .collect()
        })
        .collect();
    let null = if rows.is_empty() {
        (0..unknowns.len())
            .map(|i| (0..unknowns.len()).map(|j| Rat::from_int((i == j) as i64)).collect())
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    let mut out = Vec::new();
    for v in null {
        let mut f = vec![vec![MultiPoly::zero(&bv); rm]; rn];
        for (coef, (k, j, mono)) in v.iter().zip(&unknowns) {
            if !Ring::is_zero(coef) {
                let c = Loc3::new(coef.clone())?;
                f[*k][*j] = f[*k][*j].plus(&mono.scale(&c));
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// An invertible comodule map `m -> n[shift]`, searched among basis maps and
/// their sum.
pub fn find_isomorphism(m: &Comodule, n: &Comodule, shift: i64) -> Result<Option<Vec<Vec<Elem>>>> {
    if m.rank() != n.rank() {
        return Ok(None);
    }
    let sols = solve_comodule_maps(m, n, shift)?;
    let bv = base_vars();
    let mut candidates = sols.clone();
    if sols.len() > 1 {
        let sum = sols.iter().skip(1).fold(sols[0].clone(), |acc, f| {
            acc.iter()
                .zip(f)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.plus(y)).collect())
                .collect()
        });
        candidates.push(sum);
    }
    for f in candidates {
        let det = det_laplace(&f, &MultiPoly::one(&bv));
        if det.is_constant() && det.constant_coeff().is_unit() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Parses a matrix given as rows of expressions in `a2, a4, a6`.
pub fn base_matrix(rows: &[&[&str]]) -> Result<Vec<Vec<Elem>>> {
    let bv = base_vars();
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|s| to_loc3(&crate::exactalg::parse_expr(s, &bv)?))
                .collect()
        })
        .collect()
}

/// The map `w1 -> w3*`, `w2 -> -1/2 w2*`, `w3 -> w1*`.
pub fn self_duality_map() -> Vec<Vec<Elem>> {
    base_matrix(&[&["0", "0", "1"], &["0", "-1/2", "0"], &["1", "0", "0"]]).expect("constant matrix")
}

pub fn self_duality_certificate() -> Certificate {
    let m = mf12_comodule();
    let mut cert = Certificate::new("hopf.dual_check");
    let d = match dual_comodule(&m) {
        Ok(d) => d,
        Err(e) => {
            cert.fail(e);
            return cert;
        }
    };
    cert.absorb(&m.check("mf12"));
    cert.absorb(&d.check("mf12.dual"));
    for j in 0..3 {
        cert.witness(&format!("psi({})", d.basis[j].name), d.describe(j));
    }
    let map = comodule_map_check(&self_duality_map(), &m, &d, 4);
    cert.absorb(&map);
    match dual_comodule(&d).and_then(|dd| Ok((find_isomorphism(&m, &dd, 0)?, dd))) {
        Ok((Some(f), dd)) => {
            cert.absorb(&comodule_map_check(&f, &m, &dd, 0));
            cert.witness("double_dual_iso", format!("{:?}", f.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()));
        }
        Ok((None, _)) => cert.fail("no invertible map to the double dual"),
        Err(e) => cert.fail(e),
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_expr;

    fn gp(s: &str) -> Elem {
        to_loc3(&parse_expr(s, &gamma_vars()).unwrap()).unwrap()
    }

    fn ap(s: &str) -> Elem {
        to_loc3(&parse_expr(s, &base_vars()).unwrap()).unwrap()
    }

    #[test]
    fn right_unit() {
        assert_eq!(eta_r(&ap("a2")).unwrap(), gp("a2 + 3*r"));
        assert_eq!(eta_r(&ap("a4")).unwrap(), gp("a4 + 2*r*a2 + 3*r^2"));
        assert_eq!(eta_r(&ap("a6")).unwrap(), gp("a6 + r*a4 + r^2*a2 + r^3"));
        assert_eq!(eta_r(&ap("1")).unwrap(), gp("1"));
        assert_eq!(eta_r(&ap("a2^2")).unwrap(), gp("(a2 + 3*r)^2"));
        assert!(eta_r(&ap("a4*a6 + a2^5")).unwrap().is_homogeneous_of(10));
        assert_eq!(epsilon(&eta_r(&ap("a4")).unwrap()).unwrap(), ap("a4"));
        assert_eq!(conj(&gp("a2 + 3*r")).unwrap(), gp("a2"));
    }

    #[test]
    fn axioms() {
        let c = axioms_check();
        assert!(c.passed(), "{:?}", c.failures);
        assert_eq!(c.get("psi(r)"), Some("r1 + r2"));
    }

    #[test]
    fn mf12_and_dual() {
        let m = mf12_comodule();
        assert!(m.check("m").passed());
        assert_eq!(m.describe(0), "1 (x) w1");
        assert_eq!(m.describe(2), "1 (x) w3 + 2*r (x) w2 + r^2 (x) w1");
        let d = dual_comodule(&m).unwrap();
        assert!(d.check("d").passed());
        assert_eq!(d.describe(0), "1 (x) w1* + (-r) (x) w2* + r^2 (x) w3*");
        assert_eq!(d.describe(1), "1 (x) w2* + (-2*r) (x) w3*");
        assert_eq!(d.describe(2), "1 (x) w3*");
        assert_eq!(d.degrees(), vec![0, -2, -4]);
        let t = Comodule::trivial("e", 0);
        assert_eq!(dual_comodule(&t).unwrap().coaction, t.coaction);
    }

    #[test]
    fn maps() {
        let m = mf12_comodule();
        let id = base_matrix(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]).unwrap();
        assert!(comodule_map_check(&id, &m, &m, 0).passed());
        let d = dual_comodule(&m).unwrap();
        let c = comodule_map_check(&self_duality_map(), &m, &d, 4);
        assert!(c.passed(), "{:?}", c.failures);
        let bad = base_matrix(&[&["0", "0", "1"], &["0", "1/2", "0"], &["1", "0", "0"]]).unwrap();
        let c = comodule_map_check(&bad, &m, &d, 4);
        assert!(!c.passed());
        assert_eq!(c.get("commutes"), Some("false"));
        let c = comodule_map_check(&self_duality_map(), &m, &d, 0);
        assert!(!c.passed());
    }

    #[test]
    fn hom_spaces() {
        let m = mf12_comodule();
        let d = dual_comodule(&m).unwrap();
        assert!(!solve_comodule_maps(&m, &d, 4).unwrap().is_empty());
        let dd = dual_comodule(&d).unwrap();
        let f = find_isomorphism(&m, &dd, 0).unwrap().unwrap();
        assert!(comodule_map_check(&f, &m, &dd, 0).passed());
        assert!(self_duality_certificate().passed());
    }

    #[test]
    fn sums_and_shifts() {
        let m = mf12_comodule();
        let s = Comodule::direct_sum(&[Comodule::trivial("1", 0), m.shifted(2), m.shifted(4)]);
        assert_eq!(s.degrees(), vec![0, 2, 4, 6, 4, 6, 8]);
        assert!(s.check("s").passed());
        let json = serde_json::to_value(&m).unwrap();
        assert_eq!(json["basis"][2]["degree"], 4);
        assert_eq!(json["coaction"][0][2], "r^2");
    }
}
