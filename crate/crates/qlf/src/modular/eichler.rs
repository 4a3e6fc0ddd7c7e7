//! The Eichler integral at rational points: the infinite q-series reduces
//! to the finite sum
//!
//!   Phi~_m^{(a)}(M/N) = m sum_{n=0}^{mN} chi(n) (1 - n/(mN)) e^{n^2 M pi i/(2mN)}.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{QlfError, Result};
use crate::numeric::{unit_phase, HPComplex, PeriodicChar};

/// Phi~_m^{(a)}(M/N), exact O(mN)-term evaluation. Requires gcd(M, N) = 1.
pub fn eichler_at_rational(m: u32, a: u32, big_m: i64, n: u32, prec: u32) -> Result<HPComplex> {
    let chi = PeriodicChar::new(m, a)?;
    if n == 0 {
        return Err(QlfError::InvalidParameter("N must be positive".into()));
    }
    if big_m.unsigned_abs().gcd(&u64::from(n)) != 1 {
        return Err(QlfError::InvalidParameter(format!(
            "M and N must be coprime, got M = {big_m}, N = {n}"
        )));
    }
    let work = prec + 32;
    let mn = i64::from(m) * i64::from(n);
    let mut acc = HPComplex::zero(work);
    for k in 0..=mn {
        let c = chi.eval(k);
        if c == 0 {
            continue;
        }
        // weight (1 - k/(mN)), exact
        let weight = BigRational::new(BigInt::from(mn - k), BigInt::from(mn));
        // phase e^{k^2 M pi i/(2 m N)}
        let r = BigRational::new(BigInt::from(k) * BigInt::from(k) * BigInt::from(big_m), BigInt::from(2 * mn));
        let term = unit_phase(&r, work)
            .scale_rational(&weight)
            .scale_int(i64::from(c));
        acc = acc.add(&term);
    }
    Ok(acc.scale_int(i64::from(m)).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{pow2, unit_phase_int};

    #[test]
    fn integer_points_have_closed_form() {
        // Phi~_m^{(a)}(M) = (1+a) e^{(m-1-a)^2 pi i M / 2m}  (N = 1)
        let prec = 200;
        for m in 2..=5u32 {
            for a in 0..=m - 2 {
                for big_m in [1i64, 2, 3, -1, 7] {
                    let v = eichler_at_rational(m, a, big_m, 1, prec).unwrap();
                    let b = i64::from((m - 1 - a) * (m - 1 - a));
                    let expect = unit_phase_int(b * big_m, 2 * i64::from(m), prec)
                        .scale_int(i64::from(a) + 1);
                    assert!(
                        v.dist(&expect) < pow2(-(i64::from(prec) - 24), prec),
                        "(m,a,M) = ({m},{a},{big_m})"
                    );
                }
            }
        }
    }

    #[test]
    fn m2_at_integer_is_exp_pi_i_over_4() {
        let prec = 200;
        let v = eichler_at_rational(2, 0, 1, 1, prec).unwrap();
        let expect = unit_phase_int(1, 4, prec);
        assert!(v.dist(&expect) < pow2(-(i64::from(prec) - 24), prec));
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(eichler_at_rational(2, 0, 2, 4, 128).is_err());
        assert!(eichler_at_rational(2, 0, 1, 0, 128).is_err());
    }
}
