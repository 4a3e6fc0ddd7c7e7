//! q-Pochhammer products and Dedekind eta series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{QlfError, Result};
use crate::qseries::FormalSeries;

/// (sign * q^{x_power}; q^{base_power})_n
///   = prod_{k=0}^{n-1} (1 - sign * q^{x_power + base_power * k}).
///
/// `pochhammer(-1, 0, 2, n, ..)` is (-1; q^2)_n; `pochhammer(1, 1, 1, n, ..)`
/// is the Euler factor (q)_n.
pub fn pochhammer(a_sign: i8, x_power: i64, base_power: i64, n: u32, order: i64) -> FormalSeries {
    assert!(base_power >= 1, "base power must be positive");
    assert!(a_sign == 1 || a_sign == -1, "sign must be +1 or -1");
    let mut acc = FormalSeries::one(order);
    for k in 0..i64::from(n) {
        let e = x_power + base_power * k;
        let mut factor = FormalSeries::one(order);
        factor.add_term(e, &BigInt::from(-i64::from(a_sign)));
        acc = acc.mul(&factor);
    }
    acc
}

/// The series of eta(s*tau) in q for positive rational s = s_num/s_den:
/// substitute q -> q^s in q^{1/24} prod_{n>=1} (1 - q^n), truncated at
/// `order` whole-q units. The exponent grid is 1/(24*s_den).
pub fn dedekind_eta(s_num: i64, s_den: i64, order: i64) -> Result<FormalSeries> {
    if s_num < 1 || s_den < 1 {
        return Err(QlfError::InvalidParameter(format!(
            "eta scale must be a positive rational, got {s_num}/{s_den}"
        )));
    }
    let g = s_num.gcd(&s_den);
    let (p, r) = (s_num / g, s_den / g);
    let d = 24 * r;
    // leading monomial q^{p/(24 r)}
    let mut acc = FormalSeries::monomial(BigInt::one(), p, d, order);
    // factors (1 - q^{p n / r}); beyond p n / r >= order they are identity
    let mut n = 1i64;
    while p * n < order * r {
        let mut factor = FormalSeries::zero(d, order);
        factor.add_term(0, &BigInt::one());
        factor.add_term(24 * p * n, &BigInt::from(-1));
        acc = acc.mul(&factor);
        n += 1;
    }
    Ok(acc)
}
