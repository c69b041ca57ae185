//! Divisor-sum series `s_k(q^n) = sum_m sigma_k(m) q^(n m)`.

use num_bigint::BigInt;

use super::series::QSeries;
use crate::exactalg::{Rat, Scalar};

/// `sum_{d | m} d^k`.
pub fn sigma_k(k: u32, m: u64) -> BigInt {
    let mut s = BigInt::from(0);
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = m / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `s_k(q^n)` to absolute precision `prec`.
pub fn divisor_series(k: u32, n: u64, prec: i64) -> QSeries<Rat> {
    let n = n.max(1);
    let terms = (1u64..)
        .map(|m| (m, (n * m) as i64))
        .take_while(|(_, e)| *e < prec)
        .map(|(m, e)| (e, Rat::from_bigint(&sigma_k(k, m))));
    QSeries::from_terms(terms.collect::<Vec<_>>(), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat_int, Ring};

    #[test]
    fn small_values() {
        let s1 = divisor_series(1, 1, 6);
        let c: Vec<Rat> = (1..6).map(|i| s1.coeff(i)).collect();
        assert_eq!(c, [1, 3, 4, 7, 6].map(rat_int).to_vec());
        let s3 = divisor_series(3, 1, 5);
        assert_eq!(s3.coeff(1), rat_int(1));
        assert_eq!(s3.coeff(3), rat_int(28));
        let s3_7 = divisor_series(3, 7, 20);
        assert_eq!(s3_7.coeff(14), rat_int(9));
        assert_eq!(s3_7.coeff(13), rat_int(0));
    }

    #[test]
    fn lambert_series_identity() {
        // sum sigma_k(m) q^m = sum_l l^k q^l / (1 - q^l)
        let prec = 20;
        for k in [1u32, 3, 5] {
            let mut acc = QSeries::<Rat>::zero(prec);
            for l in 1..prec {
                let num = QSeries::monomial(Ring::pow(&rat_int(l), k), l, prec);
                let den = QSeries::one(prec).sub(&QSeries::monomial(rat_int(1), l, prec));
                acc = acc.add(&num.div(&den).unwrap());
            }
            assert_eq!(acc, divisor_series(k, 1, prec));
        }
    }
}
