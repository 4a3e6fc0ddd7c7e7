//! L-function values at non-positive integers for mean-zero periodic
//! sequences, by the finite Bernoulli sum
//!
//!   L(-k, C) = -(f^k / (k+1)) sum_{n=1}^{f} C(n) B_{k+1}(n/f).

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{QlfError, Result};
use crate::numeric::hp::{pow2, real_from_rational};
use crate::numeric::{bernoulli_polynomial, HPComplex};

/// L(-k, C) for the periodic sequence C given as one period
/// `[C(1), ..., C(f)]`.
///
/// Rejects sequences whose period sum exceeds 2^{-(prec-8)} in modulus:
/// exact characters pass exactly, phase-twisted characters within rounding.
pub fn l_value(k: u32, period: &[HPComplex]) -> Result<HPComplex> {
    if period.is_empty() {
        return Err(QlfError::InvalidParameter(
            "periodic sequence must be non-empty".into(),
        ));
    }
    let f = period.len();
    let prec = period.iter().map(|c| c.prec()).max().unwrap();

    let mut mean = HPComplex::zero(prec);
    for c in period {
        mean = mean.add(c);
    }
    if mean.abs() > pow2(-(i64::from(prec) - 8), prec) {
        return Err(QlfError::InvalidParameter(format!(
            "periodic sequence has nonzero mean (|sum| = {:e})",
            mean.abs().to_f64()
        )));
    }

    let mut acc = HPComplex::zero(prec);
    for (i, c) in period.iter().enumerate() {
        let n = i + 1;
        let x = BigRational::new(BigInt::from(n), BigInt::from(f));
        let b = bernoulli_polynomial(k as usize + 1, &x);
        acc = acc.add(&c.scale(&real_from_rational(&b, prec)));
    }

    // -(f^k/(k+1)) * acc
    let mut scale = BigRational::new(BigInt::from(-1), BigInt::from(i64::from(k) + 1));
    for _ in 0..k {
        scale *= BigRational::from(BigInt::from(f));
    }
    Ok(acc.scale(&real_from_rational(&scale, prec)))
}

/// Real-sequence convenience wrapper (used by exact characters).
pub fn l_value_real(k: u32, period_ints: &[i8], prec: u32) -> Result<HPComplex> {
    let period: Vec<HPComplex> = period_ints
        .iter()
        .map(|&v| HPComplex::from_int(i64::from(v), prec))
        .collect();
    l_value(k, &period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{PeriodicChar, DEFAULT_PRECISION_BITS};

    fn chi_period(m: u32, a: u32) -> Vec<i8> {
        let chi = PeriodicChar::new(m, a).unwrap();
        (1..=i64::from(chi.modulus())).map(|n| chi.eval(n)).collect()
    }

    #[test]
    fn l0_of_chi_is_a_plus_1_over_m() {
        let prec = DEFAULT_PRECISION_BITS;
        for m in 2..=6u32 {
            for a in 0..=m - 2 {
                let v = l_value_real(0, &chi_period(m, a), prec).unwrap();
                let expect = HPComplex::from_rational(
                    &BigRational::new(BigInt::from(a + 1), BigInt::from(m)),
                    prec,
                );
                assert!(
                    v.dist(&expect) < pow2(-(i64::from(prec) - 16), prec),
                    "L(0, chi_{{2*{m}}}^{{({a})}}) != (a+1)/m"
                );
            }
        }
    }

    #[test]
    fn alternating_sequence_matches_hand_value() {
        // C = +1, -1 with f = 2: L(0,C) = -(B_1(1/2) - B_1(1)) = -(0 - 1/2) = 1/2
        let prec = 128;
        let v = l_value_real(0, &[1, -1], prec).unwrap();
        let expect = HPComplex::from_rational(&crate::numeric::rat(1, 2), prec);
        assert!(v.dist(&expect) < pow2(-120, prec));
    }

    #[test]
    fn zero_sequence_gives_zero() {
        let prec = 128;
        for k in [0u32, 1, 3, 7] {
            let v = l_value_real(k, &[0, 0, 0, 0, 0, 0], prec).unwrap();
            assert!(v.abs().is_zero());
        }
    }

    #[test]
    fn rejects_nonzero_mean() {
        let prec = 128;
        assert!(l_value_real(0, &[1, 1], prec).is_err());
    }
}
