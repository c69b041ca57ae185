//! Dense exact linear algebra over fields, plus a few integer and
//! polynomial-entry helpers.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::ring::{Ring, Scalar};
use crate::error::{AlgError, Result};

fn bz(x: &BigInt) -> bool {
    num_traits::Zero::is_zero(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgError::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).plus(&a.times(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and pivot columns. Requires a field.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).try_inv().expect("rref needs a field");
            for j in c..m.cols {
                let v = m.get(r, j).times(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).minus(&f.times(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Unique solution of `self * x = b`.
    pub fn solve(&self, b: &[C]) -> Result<Vec<C>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return Err(AlgError::Inconsistent(format!(
                "{}x{} system has no solution",
                self.rows, self.cols
            )));
        }
        if piv.len() < self.cols {
            return Err(AlgError::Underdetermined(format!(
                "rank {} < {} unknowns",
                piv.len(),
                self.cols
            )));
        }
        Ok((0..self.cols).map(|i| r.get(i, self.cols).clone()).collect())
    }

    /// A basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<C>> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (i, &p) in piv.iter().enumerate() {
                    v[p] = r.get(i, f).negate();
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix over a field.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        assert_eq!(n, self.cols, "inverse of non-square matrix");
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, C::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(AlgError::NotUnit("singular matrix".into()));
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Determinant by elimination. Requires a field.
    pub fn det(&self) -> C {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let mut m = self.clone();
        let mut d = C::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return C::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                d = d.negate();
            }
            let piv = m.get(c, c).clone();
            d = d.times(&piv);
            let inv = piv.try_inv().expect("det needs a field");
            for i in c + 1..m.rows {
                let f = m.get(i, c).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).minus(&f.times(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        d
    }
}

impl<C: Scalar> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant of a square matrix over any commutative ring, by Laplace
/// expansion along rows with memoisation on the set of used columns.
pub fn det_laplace<T: Ring>(m: &[Vec<T>], one: &T) -> T {
    let n = m.len();
    assert!(n <= 24, "laplace expansion limited to 24x24");
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    fn go<T: Ring>(m: &[Vec<T>], row: usize, used: u32, one: &T, memo: &mut HashMap<u32, T>) -> T {
        let n = m.len();
        if row == n {
            return one.clone();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = one.zero_like();
        let mut free_before = 0;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let e = &m[row][c];
            if !e.is_zero() {
                let minor = go(m, row + 1, used | (1 << c), one, memo);
                let t = e.times(&minor);
                acc = if free_before % 2 == 0 { acc.plus(&t) } else { acc.minus(&t) };
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(m, 0, 0, one, &mut HashMap::new())
}

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries
/// only, each positive, each dividing the next).
pub fn smith_diagonal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !bz(&a[i][j])
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut changed = false;
            for i in t + 1..nr {
                let q = a[i][t].div_floor(&p);
                if !bz(&q) {
                    for j in t..nc {
                        let v = &a[i][j] - &q * &a[t][j];
                        a[i][j] = v;
                    }
                }
                if !bz(&a[i][t]) {
                    changed = true;
                }
            }
            for j in t + 1..nc {
                let q = a[t][j].div_floor(&p);
                if !bz(&q) {
                    for i in t..nr {
                        let v = &a[i][j] - &q * &a[i][t];
                        a[i][j] = v;
                    }
                }
                if !bz(&a[t][j]) {
                    changed = true;
                }
            }
            if !changed {
                // pivot must divide the rest of the block
                let bad = (t + 1..nr)
                    .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
                    .find(|&(i, j)| !bz(&(&a[i][j] % &p)));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..nc {
                            let v = &a[t][j] + &a[i][j];
                            a[t][j] = v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..nr {
                if !bz(&a[i][t]) && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                if !bz(&a[t][j]) && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for r in a.iter_mut() {
                    r.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalars::{rat, Gf3, Rat};
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_solve_nullspace() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        let col = Matrix::from_rows(ns[0].iter().map(|x| vec![x.clone()]).collect());
        assert!(m.mul(&col).unwrap().to_rows().iter().all(|r| Ring::is_zero(&r[0])));
        let a = qm(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[Rat::from_int(3), Rat::from_int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(matches!(m.solve(&[rat(1, 1), rat(0, 1), rat(0, 1)]), Err(AlgError::Inconsistent(_))));
    }

    #[test]
    fn gf3_rank() {
        let m = Matrix::from_rows(vec![
            vec![Gf3::new(1), Gf3::new(2)],
            vec![Gf3::new(2), Gf3::new(1)],
        ]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det(), Gf3::new(0));
    }

    #[test]
    fn smith_examples() {
        let b = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(smith_diagonal(&b(&[&[2, 4], &[6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(smith_diagonal(&b(&[&[1, 0, 0], &[0, 0, 0]])), vec![BigInt::from(1)]);
        assert_eq!(smith_diagonal(&b(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
    }

    proptest! {
        #[test]
        fn laplace_agrees_with_elimination(v in prop::collection::vec(-9i64..10, 25)) {
            let rows: Vec<Vec<Rat>> = v.chunks(5).map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
            let m = Matrix::from_rows(rows.clone());
            prop_assert_eq!(det_laplace(&rows, &Rat::from_int(1)), m.det());
        }
    }
}
