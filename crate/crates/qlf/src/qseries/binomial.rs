//! Gaussian binomial coefficients [n choose k] as integer polynomials in q,
//! built by the Pascal recurrence
//!
//!   [n+1 choose k] = q^k [n choose k] + [n choose k-1]
//!
//! and never by division. Evaluated verbatim at roots of unity this stays
//! valid where the product formula's (w)_n would vanish.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};


use crate::qseries::FormalSeries;

/// Memoized triangle of Gaussian binomial polynomials.
///
/// Reads are concurrent (entries are cloned out), insertion is serialized.
pub struct QBinomialTable {
    table: Mutex<HashMap<(u32, u32), FormalSeries>>,
}

impl QBinomialTable {
    pub fn new() -> Self {
        QBinomialTable {
            table: Mutex::new(HashMap::new()),
        }
    }

    /// The polynomial [n choose k]; zero unless n >= k >= 0.
    /// Degree k(n-k), stored untruncated.
    pub fn get(&self, n: u32, k: i64) -> FormalSeries {
        let order = untruncated_order(n);
        if k < 0 || k > i64::from(n) {
            return FormalSeries::zero(1, order);
        }
        let k = k as u32;
        let k = k.min(n - k); // symmetry [n,k] = [n,n-k]
        if k == 0 {
            return FormalSeries::one(order);
        }
        if let Some(hit) = self.table.lock().unwrap().get(&(n, k)) {
            return hit.clone();
        }
        // build the triangle rows bottom-up so recursion depth stays flat
        for nn in 1..=n {
            for kk in 1..=(nn / 2) {
                let key = (nn, kk);
                if self.table.lock().unwrap().contains_key(&key) {
                    continue;
                }
                let upper = self.fetch(nn - 1, i64::from(kk));
                let lower = self.fetch(nn - 1, kk as i64 - 1);
                let value = upper.mul_monomial(i64::from(kk), 1).add(&lower);
                self.table.lock().unwrap().insert(key, value);
            }
        }
        self.table.lock().unwrap().get(&(n, k)).unwrap().clone()
    }

    fn fetch(&self, n: u32, k: i64) -> FormalSeries {
        let order = untruncated_order(n);
        if k < 0 || k > i64::from(n) {
            return FormalSeries::zero(1, order);
        }
        let k = (k as u32).min(n - k as u32);
        if k == 0 {
            return FormalSeries::one(order);
        }
        self.table
            .lock()
            .unwrap()
            .get(&(n, k))
            .cloned()
            .expect("triangle rows are filled in order")
    }
}

impl Default for QBinomialTable {
    fn default() -> Self {
        Self::new()
    }
}

fn untruncated_order(_n: u32) -> i64 {
    // binomial polynomials are exact; an effectively infinite order keeps
    // min-order propagation from ever truncating them
    i64::MAX / 4
}

fn global_table() -> &'static QBinomialTable {
    static TABLE: OnceLock<QBinomialTable> = OnceLock::new();
    TABLE.get_or_init(QBinomialTable::new)
}

/// [n choose k] from the process-wide memo table.
pub fn gauss_binomial(n: u32, k: i64) -> FormalSeries {
    global_table().get(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    /// Product-formula oracle: prod_{i=1}^{k} (1-q^{n-k+i})/(1-q^i), expanded
    /// by multiplying out the numerator and dividing exactly. Independent of
    /// the Pascal-recurrence path.
    fn product_oracle(n: u32, k: u32) -> FormalSeries {
        let order = i64::from(n) * i64::from(n) + 2;
        let mut num = FormalSeries::one(order);
        let mut den = FormalSeries::one(order);
        for i in 1..=i64::from(k) {
            let mut f = FormalSeries::one(order);
            f.set_term(i64::from(n - k) + i, BigInt::from(-1));
            num = num.mul(&f);
            let mut g = FormalSeries::one(order);
            g.set_term(i, BigInt::from(-1));
            den = den.mul(&g);
        }
        num.div_exact(&den).unwrap()
    }

    #[test]
    fn two_choose_one() {
        let b = gauss_binomial(2, 1);
        assert_eq!(b.coeff(0, 1), BigInt::one());
        assert_eq!(b.coeff(1, 1), BigInt::one());
        assert_eq!(b.num_terms(), 2);
    }

    #[test]
    fn out_of_range_is_zero() {
        assert!(gauss_binomial(5, -1).is_zero());
        assert!(gauss_binomial(5, 6).is_zero());
    }

    #[test]
    fn four_choose_two_matches_product_oracle() {
        // oracle gives 1 + q + 2q^2 + q^3 + q^4
        let b = gauss_binomial(4, 2);
        let oracle = product_oracle(4, 2);
        assert!(b.agrees_with(&oracle));
        assert_eq!(b.coeff(2, 1), BigInt::from(2));
    }

    #[test]
    fn both_pascal_recurrences_hold() {
        // (binomial_1): [n+1,k] = q^k [n,k] + [n,k-1]
        // (binomial_2): [n+1,k] = [n,k] + q^{n+1-k} [n,k-1]
        for n in 0..40u32 {
            for k in 0..=i64::from(n) {
                let lhs = gauss_binomial(n + 1, k);
                let r1 = gauss_binomial(n, k)
                    .mul_monomial(k, 1)
                    .add(&gauss_binomial(n, k - 1));
                assert!(lhs.agrees_with(&r1), "binomial_1 fails at ({n},{k})");
                let r2 = gauss_binomial(n, k)
                    .add(&gauss_binomial(n, k - 1).mul_monomial(i64::from(n) + 1 - k, 1));
                assert!(lhs.agrees_with(&r2), "binomial_2 fails at ({n},{k})");
            }
        }
    }

    #[test]
    fn symmetry_and_specialization_at_one() {
        for n in 0..=20u32 {
            let mut ordinary = BigInt::one();
            for k in 0..=i64::from(n) {
                assert!(gauss_binomial(n, k)
                    .agrees_with(&gauss_binomial(n, i64::from(n) - k)));
                assert_eq!(gauss_binomial(n, k).eval_at_one(), ordinary);
                // next ordinary binomial C(n, k+1)
                ordinary = ordinary * BigInt::from(n as i64 - k) / BigInt::from(k + 1);
            }
        }
    }

    #[test]
    fn coefficients_are_nonnegative() {
        for n in 0..=24u32 {
            for k in 0..=i64::from(n) {
                assert!(gauss_binomial(n, k).iter().all(|(_, c)| !c.is_zero() && c.sign() != num_bigint::Sign::Minus));
            }
        }
    }
}
