//! Bernoulli numbers and polynomials over exact rationals.
//!
//! The number cache grows once per process and is shared by every module
//! (L-values, generalized Euler numbers, the Eichler-integral finite sums).

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// B_n with the B_1 = -1/2 convention, from the defining recurrence
/// sum_{k=0}^{n} C(n+1,k) B_k = 0.
pub fn bernoulli_number(n: usize) -> BigRational {
    let mut table = cache().lock().expect("bernoulli cache poisoned");
    while table.len() <= n {
        let m = table.len();
        let mut acc = BigRational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += BigRational::from(binomial(m + 1, k)) * b;
        }
        let value = -acc / BigRational::from(BigInt::from(m as i64 + 1));
        table.push(value);
    }
    table[n].clone()
}

/// B_n(x) = sum_{k=0}^{n} C(n,k) B_k x^{n-k}, evaluated exactly.
pub fn bernoulli_polynomial(n: usize, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut xpow = BigRational::one();
    // accumulate from k = n down to 0 so xpow tracks x^{n-k}
    for k in (0..=n).rev() {
        acc += BigRational::from(binomial(n, k)) * bernoulli_number(k) * &xpow;
        xpow *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn first_numbers() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), rat(0, 1));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn b1_is_x_minus_half() {
        let x = rat(7, 3);
        assert_eq!(bernoulli_polynomial(1, &x), &x - rat(1, 2));
    }

    #[test]
    fn b0_is_one() {
        assert_eq!(bernoulli_polynomial(0, &rat(-9, 4)), rat(1, 1));
    }

    #[test]
    fn b3_at_quarter_matches_expansion() {
        // oracle: B_3(x) = x^3 - (3/2)x^2 + (1/2)x, expanded by hand at x=1/4
        let x = rat(1, 4);
        let expect = &x * &x * &x - rat(3, 2) * &x * &x + rat(1, 2) * &x;
        assert_eq!(bernoulli_polynomial(3, &x), expect);
        assert_eq!(expect, rat(3, 64));
    }

    #[test]
    fn forward_difference_identity() {
        // B_n(x+1) - B_n(x) = n x^{n-1}, exact, on a few rational points
        for n in 1..=12usize {
            for x in [rat(2, 5), rat(-7, 3), rat(11, 8)] {
                let lhs = bernoulli_polynomial(n, &(&x + rat(1, 1))) - bernoulli_polynomial(n, &x);
                let mut pow = BigRational::from(BigInt::from(1));
                for _ in 0..n - 1 {
                    pow *= &x;
                }
                assert_eq!(lhs, BigRational::from(BigInt::from(n as i64)) * pow);
            }
        }
    }
}
