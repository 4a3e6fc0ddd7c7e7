//! The colored Jones ratio for T(2,2m) at generic h:
//!
//!   2 sh(Nh/2) J_N(h)/J_N(h; unknot)
//!     = e^{-m(N^2-1)h/2} sum_{eps=+-1} sum_{j=0}^{N-1}
//!       eps e^{m h j^2 + (m+eps) h j + h eps/2}.

use crate::error::{QlfError, Result};
use crate::numeric::HPComplex;

/// Evaluates the closed-form right side; total on any complex h.
pub fn colored_jones_ratio(m: u32, n: u32, h: &HPComplex) -> Result<HPComplex> {
    if m < 1 || n < 1 {
        return Err(QlfError::InvalidParameter("m and N must be >= 1".into()));
    }
    let out_prec = h.prec();
    let prec = out_prec + 32;
    let h = h.with_prec(prec);
    let m_i = i64::from(m);
    let n_i = i64::from(n);

    let mut sum = HPComplex::zero(prec);
    for eps in [1i64, -1] {
        for j in 0..n_i {
            // m h j^2 + (m+eps) h j + h eps/2 : assemble the rational
            // multiplier of h exactly, as 2(m j^2 + (m+eps) j) + eps over 2
            let twice = 2 * (m_i * j * j + (m_i + eps) * j) + eps;
            let exponent = h.scale_int(twice).scale(&(rug::Float::with_val(prec, 0.5f64)));
            let term = exponent.exp().scale_int(eps);
            sum = sum.add(&term);
        }
    }
    let pref = h
        .scale_int(-m_i * (n_i * n_i - 1))
        .scale(&rug::Float::with_val(prec, 0.5f64))
        .exp();
    Ok(sum.mul(&pref).with_prec(out_prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{pow2, PeriodicChar};

    #[test]
    fn n1_is_twice_sh_half() {
        // single j = 0 term: e^{h/2} - e^{-h/2} = 2 sh(h/2)
        let prec = 200;
        for m in [1u32, 3, 5] {
            let h = HPComplex::from_f64(0.37, -0.81, prec);
            let v = colored_jones_ratio(m, 1, &h).unwrap();
            let half = h.scale(&rug::Float::with_val(prec, 0.5f64));
            let expect = half.exp().sub(&half.neg().exp());
            assert!(v.dist(&expect) < pow2(-(i64::from(prec) - 24), prec));
        }
    }

    #[test]
    fn matches_chi_rewrite() {
        // -e^{-m(N^2-1)h/2 - (m^2+1)h/4m} sum_{k=0}^{2mN} chi(k) e^{k^2 h/4m}
        let prec = 256;
        let h = HPComplex::from_f64(0.21, 0.43, prec);
        for (m, n) in [(2u32, 3u32), (3, 4), (5, 8), (4, 5)] {
            let lhs = colored_jones_ratio(m, n, &h).unwrap();
            let chi = PeriodicChar::new(m, 0).unwrap();
            let m_i = i64::from(m);
            let n_i = i64::from(n);
            let work = prec + 32;
            let hw = h.with_prec(work);
            let quarter_m = rug::Float::with_val(work, 4 * m_i);
            let mut sum = HPComplex::zero(work);
            for k in 0..=2 * m_i * n_i {
                let c = chi.eval(k);
                if c == 0 {
                    continue;
                }
                let e = hw
                    .scale_int(k * k)
                    .scale(&rug::Float::with_val(work, quarter_m.clone().recip()));
                sum = sum.add(&e.exp().scale_int(i64::from(c)));
            }
            let pref_exp = hw
                .scale_int(-m_i * (n_i * n_i - 1))
                .scale(&rug::Float::with_val(work, 0.5f64))
                .add(&hw.scale_int(-(m_i * m_i + 1)).scale(&rug::Float::with_val(
                    work,
                    quarter_m.recip(),
                )));
            let rhs = sum.mul(&pref_exp.exp()).neg();
            // tolerance is relative: the summands reach e^{m |Re h| N^2}
            let scale = rug::Float::with_val(prec, 1) + lhs.abs();
            assert!(
                lhs.dist(&rhs) < pow2(-(i64::from(prec) - 16), prec) * scale,
                "(m,N) = ({m},{n}): {:?}",
                lhs.dist(&rhs).to_f64()
            );
        }
    }

    #[test]
    fn large_negative_real_h_is_dominated_by_j0() {
        // decay sanity: for h real and very negative the j = 0 terms with
        // eps = +-1 dominate and the value is ~ 2 sh(h/2) * e^{-m(N^2-1)h/2}
        let prec = 128;
        let h = HPComplex::from_f64(-40.0, 0.0, prec);
        let v = colored_jones_ratio(2, 4, &h).unwrap();
        // sign: e^{-h/2} dominates inside 2sh(h/2) < 0, prefactor > 0
        assert!(v.re.is_sign_negative());
    }
}
