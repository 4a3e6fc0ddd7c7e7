//! The theta series Phi_m^{(a)} = sum_{n in Z} n chi_{2m}^{(a)}(n) q^{n^2/4m}
//! and its Eichler integral m sum_{n >= 0} chi(n) q^{n^2/4m}, as exact
//! series and as numeric values on the upper half plane.

use num_bigint::BigInt;

use crate::error::{QlfError, Result};
use crate::numeric::{pow2, HPComplex, HPReal, PeriodicChar};
use crate::qseries::FormalSeries;

/// Phi_m^{(a)} as an exact series on the grid 1/(4m): the sum over n in Z
/// folds to 2 sum_{n >= 1} n chi(n) q^{n^2/4m} by oddness.
pub fn theta_series(m: u32, a: u32, q_order: i64) -> Result<FormalSeries> {
    let chi = PeriodicChar::new(m, a)?;
    let d = 4 * i64::from(m);
    let mut out = FormalSeries::zero(d, q_order);
    let mut n = 1i64;
    while n * n < q_order * d {
        let c = chi.eval(n);
        if c != 0 {
            out.add_term(n * n, &BigInt::from(2 * n * i64::from(c)));
        }
        n += 1;
    }
    Ok(out)
}

/// The Eichler integral m sum_{n >= 0} chi_{2m}^{(a)}(n) q^{n^2/4m}.
pub fn eichler_series(m: u32, a: u32, q_order: i64) -> Result<FormalSeries> {
    let chi = PeriodicChar::new(m, a)?;
    let d = 4 * i64::from(m);
    let mut out = FormalSeries::zero(d, q_order);
    let mut n = 0i64;
    while n * n < q_order * d {
        let c = chi.eval(n);
        if c != 0 {
            out.add_term(n * n, &BigInt::from(i64::from(m) * i64::from(c)));
        }
        n += 1;
    }
    Ok(out)
}

/// The (m-1) series Phi_m^{(a)} in the vector ordering a = m-2, ..., 0.
pub struct ThetaFamily {
    pub m: u32,
    pub components: Vec<FormalSeries>,
}

impl ThetaFamily {
    pub fn new(m: u32, q_order: i64) -> Result<Self> {
        let components = (0..=m - 2)
            .rev()
            .map(|a| theta_series(m, a, q_order))
            .collect::<Result<Vec<_>>>()?;
        Ok(ThetaFamily { m, components })
    }
}

fn require_upper_half_plane(tau: &HPComplex) -> Result<()> {
    if tau.im.is_sign_positive() && !tau.im.is_zero() {
        Ok(())
    } else {
        Err(QlfError::InvalidParameter(
            "tau must lie in the upper half plane (Im tau > 0)".into(),
        ))
    }
}

/// Shared numeric summation of sum_n weight(n) chi(n) q^{n^2/4m} at
/// q = e^{2 pi i tau}. Truncates after three consecutive support terms
/// fall below 2^{-(prec-32)}.
fn chi_theta_sum(
    m: u32,
    a: u32,
    tau: &HPComplex,
    prec: u32,
    n_start: i64,
    weight: impl Fn(i64) -> i64,
) -> Result<HPComplex> {
    let chi = PeriodicChar::new(m, a)?;
    require_upper_half_plane(tau)?;
    let work = prec + 32;
    let tau = tau.with_prec(work);
    // w = q^{1/4m}; advance w^{n^2} incrementally
    let two_pi_i = HPComplex::new(
        HPReal::with_val(work, 0),
        crate::numeric::pi(work) * HPReal::with_val(work, 2),
    );
    let w = two_pi_i
        .scale(&(HPReal::with_val(work, 1) / HPReal::with_val(work, 4 * m)))
        .mul(&tau)
        .exp();
    let w2 = w.mul(&w);
    let threshold = pow2(-(i64::from(prec) - 32), work);

    let mut acc = HPComplex::zero(work);
    let mut r = w.pow_u64((n_start * n_start) as u64); // w^{n^2}
    let mut s = w.pow_u64((2 * n_start + 1) as u64); // w^{2n+1}
    let mut small_streak = 0u32;
    let mut n = n_start;
    loop {
        let c = chi.eval(n);
        if c != 0 {
            let term = r.scale_int(weight(n) * i64::from(c));
            if term.abs() < threshold {
                small_streak += 1;
                if small_streak >= 3 {
                    break;
                }
            } else {
                small_streak = 0;
            }
            acc = acc.add(&term);
        }
        r = r.mul(&s);
        s = s.mul(&w2);
        n += 1;
    }
    Ok(acc.with_prec(prec))
}

/// Numeric Phi_m^{(a)}(tau), Im tau > 0.
pub fn theta_eval(m: u32, a: u32, tau: &HPComplex, prec: u32) -> Result<HPComplex> {
    // folded: 2 sum_{n>=1} n chi(n) q^{n^2/4m}
    Ok(chi_theta_sum(m, a, tau, prec, 1, |n| 2 * n)?)
}

/// Numeric Eichler integral m sum_{n>=0} chi(n) q^{n^2/4m}, Im tau > 0.
pub fn eichler_eval(m: u32, a: u32, tau: &HPComplex, prec: u32) -> Result<HPComplex> {
    let m_i = i64::from(m);
    Ok(chi_theta_sum(m, a, tau, prec, 0, move |_| m_i)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::unit_phase_int;

    #[test]
    fn theta_m2_display() {
        // 2 q^{1/8} (1 - 3q + 5q^3 - 7q^6 + 9q^10 - 11q^15)
        let s = theta_series(2, 0, 40).unwrap();
        for (k, c) in [(1i64, 2i64), (9, -6), (25, 10), (49, -14), (81, 18), (121, -22)] {
            assert_eq!(s.coeff(k, 8), BigInt::from(c), "coefficient of q^{k}/8");
        }
    }

    #[test]
    fn theta_m3_and_m4_displays() {
        // Phi_3^{(0)} = 4q^{1/3}(1 - 2q + 4q^5 - 5q^8 + 7q^16 - 8q^21)
        let s = theta_series(3, 0, 40).unwrap();
        for (k, c) in [(4i64, 4i64), (16, -8), (64, 16), (100, -20), (196, 28), (256, -32)] {
            assert_eq!(s.coeff(k, 12), BigInt::from(c));
        }
        // Phi_4^{(2)} = 2q^{1/16}(1 - 7q^3 + 9q^5 - 15q^14 + 17q^18 - 23q^33)
        let s = theta_series(4, 2, 40).unwrap();
        for (k, c) in [(1i64, 2i64), (49, -14), (81, 18), (225, -30), (289, 34)] {
            assert_eq!(s.coeff(k, 16), BigInt::from(c));
        }
    }

    #[test]
    fn eichler_m2_and_m4_displays() {
        // 2q^{1/8}(1 - q + q^3 - q^6 + q^10 - q^15)
        let s = eichler_series(2, 0, 40).unwrap();
        for (k, c) in [(1i64, 2i64), (9, -2), (25, 2), (49, -2), (81, 2), (121, -2)] {
            assert_eq!(s.coeff(k, 8), BigInt::from(c));
        }
        // 4q^{1/4}(1 - q^2 + q^6 - q^12 + q^20 - q^30)
        let s = eichler_series(4, 1, 40).unwrap();
        for (k, c) in [(4i64, 4i64), (36, -4), (100, 4), (196, -4), (324, 4)] {
            assert_eq!(s.coeff(k, 16), BigInt::from(c));
        }
    }

    #[test]
    fn eichler_4_1_equals_doubled_2_0() {
        // Phi~_4^{(1)}(tau) = 2 Phi~_2^{(0)}(2 tau)
        let lhs = eichler_series(4, 1, 60).unwrap();
        let rhs = eichler_series(2, 0, 30)
            .unwrap()
            .substitute_power(2, 1)
            .scale(&BigInt::from(2));
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn theta_eval_matches_series_evaluation() {
        // tau = 1/2 + 2i against the truncated exact series
        let prec = 256;
        let tau = HPComplex::from_f64(0.5, 2.0, prec);
        for (m, a) in [(2u32, 0u32), (3, 0), (3, 1), (4, 2)] {
            let direct = theta_eval(m, a, &tau, prec).unwrap();
            let series = theta_series(m, a, 60).unwrap().eval_at_tau(&tau, prec + 32);
            assert!(
                direct.dist(&series) < pow2(-(i64::from(prec) - 40), prec),
                "(m,a) = ({m},{a}): |direct - series| = {:?}",
                direct.dist(&series).to_f64()
            );
        }
    }

    #[test]
    fn theta_eval_rejects_lower_half_plane() {
        let prec = 64;
        let tau = HPComplex::from_f64(0.5, -2.0, prec);
        assert!(theta_eval(2, 0, &tau, prec).is_err());
        assert!(theta_eval(2, 0, &HPComplex::from_f64(0.5, 0.0, prec), prec).is_err());
    }

    #[test]
    fn t_transform_phase_at_one_step() {
        // Phi_m^{(s)}(tau+1) = e^{(m-1-s)^2 pi i/2m} Phi_m^{(s)}(tau);
        // the m=3 displays read e^{pi i/6} for s=1 and e^{2 pi i/3} for s=0
        let prec = 192;
        let tau = HPComplex::from_f64(0.3, 1.2, prec);
        let tau1 = tau.add(&HPComplex::one(prec));
        for m in 2..=4u32 {
            for s in 0..=m - 2 {
                let p = i64::from((m - 1 - s) * (m - 1 - s));
                let lhs = theta_eval(m, s, &tau1, prec).unwrap();
                let phase = unit_phase_int(p, 2 * i64::from(m), prec);
                let rhs = theta_eval(m, s, &tau, prec).unwrap().mul(&phase);
                assert!(lhs.dist(&rhs) < pow2(-(i64::from(prec) - 40), prec));
            }
        }
    }
}
