//! Precomputed primitive 2N-th root-of-unity powers plus cached Gaussian
//! binomial values at omega = e^{2 pi i/N}, in both the complex and the
//! exact group-ring backend.
//!
//! Half-integer powers of omega are handled by doubling every exponent and
//! reducing against the zeta table: omega^{c(c+1)/2} = zeta^{c(c+1)}.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{QlfError, Result};
use crate::invariants::group_ring::GroupRingElement;
use crate::numeric::{pow2, unit_phase_int, HPComplex, HPReal};
use crate::qseries::gauss_binomial;

pub struct RootContext {
    n: u32,
    precision_bits: u32,
    work_prec: u32,
    exact_enabled: bool,
    /// zeta^j for j = 0..2N-1, zeta = e^{i pi/N}, at work precision.
    zeta: Vec<HPComplex>,
    binom_values: RwLock<HashMap<(u32, u32), HPComplex>>,
    binom_exact: RwLock<HashMap<(u32, u32), GroupRingElement>>,
}

impl RootContext {
    pub fn new(n: u32, precision_bits: u32, exact_enabled: bool) -> Result<Self> {
        if n < 1 {
            return Err(QlfError::InvalidParameter("N must be >= 1".into()));
        }
        if precision_bits < 32 {
            return Err(QlfError::InvalidParameter(
                "precision must be at least 32 bits".into(),
            ));
        }
        let work_prec = precision_bits + 32;
        let zeta = (0..2 * n)
            .map(|j| unit_phase_int(i64::from(j), i64::from(n), work_prec))
            .collect();
        Ok(RootContext {
            n,
            precision_bits,
            work_prec,
            exact_enabled,
            zeta,
            binom_values: RwLock::new(HashMap::new()),
            binom_exact: RwLock::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn work_prec(&self) -> u32 {
        self.work_prec
    }

    pub fn exact_enabled(&self) -> bool {
        self.exact_enabled
    }

    /// The group-ring modulus 2N of the zeta grid.
    pub fn ring_modulus(&self) -> usize {
        2 * self.n as usize
    }

    /// zeta^j with j reduced mod 2N.
    pub fn zeta_pow(&self, j: i64) -> &HPComplex {
        let idx = j.rem_euclid(2 * i64::from(self.n)) as usize;
        &self.zeta[idx]
    }

    /// omega^e = zeta^{2e}.
    pub fn omega_pow(&self, e: i64) -> &HPComplex {
        self.zeta_pow(2 * e)
    }

    /// omega^{c(c+1)/2} = zeta^{c(c+1)} (always integral).
    pub fn omega_half_triangle(&self, c: i64) -> &HPComplex {
        self.zeta_pow(c * (c + 1))
    }

    /// Gaussian binomial value [n choose k] at omega, by Horner evaluation
    /// of the Pascal-recurrence polynomial over the zeta table (never by
    /// division, which would hit vanishing (omega)_n).
    pub fn binomial_at_omega(&self, top: u32, k: i64) -> HPComplex {
        if k < 0 || k > i64::from(top) {
            return HPComplex::zero(self.work_prec);
        }
        let key = (top, k as u32);
        if let Some(hit) = self.binom_values.read().unwrap().get(&key) {
            return hit.clone();
        }
        let poly = gauss_binomial(top, k);
        let omega = self.omega_pow(1).clone();
        // Horner from the highest exponent down; the polynomial is dense
        // enough on [0, deg] that stepping degree-by-degree is fine
        let deg = poly.iter().next_back().map(|(e, _)| *e).unwrap_or(0);
        let mut acc = HPComplex::zero(self.work_prec);
        for e in (0..=deg).rev() {
            acc = acc.mul(&omega);
            let c = poly.coeff(e, 1);
            if !num_traits::Zero::is_zero(&c) {
                acc = acc.add(&HPComplex::from_bigint(&c, self.work_prec));
            }
        }
        self.binom_values.write().unwrap().insert(key, acc.clone());
        acc
    }

    /// The same binomial value in the exact backend: Horner in
    /// Z[x]/(x^{2N}-1) where multiplication by omega is rotation by 2.
    pub fn binomial_at_omega_exact(&self, top: u32, k: i64) -> GroupRingElement {
        let m = self.ring_modulus();
        if k < 0 || k > i64::from(top) {
            return GroupRingElement::zero(m);
        }
        let key = (top, k as u32);
        if let Some(hit) = self.binom_exact.read().unwrap().get(&key) {
            return hit.clone();
        }
        let poly = gauss_binomial(top, k);
        let deg = poly.iter().next_back().map(|(e, _)| *e).unwrap_or(0);
        let mut acc = GroupRingElement::zero(m);
        for e in (0..=deg).rev() {
            acc = acc.rotate(2);
            let c = poly.coeff(e, 1);
            if !num_traits::Zero::is_zero(&c) {
                acc.add_monomial(0, &c);
            }
        }
        self.binom_exact.write().unwrap().insert(key, acc.clone());
        acc
    }

    /// Table integrity: max | |zeta^j|^2 - 1 | must stay below
    /// 2^{-(prec-8)}.
    pub fn unit_norm_residual(&self) -> HPReal {
        let mut worst = HPReal::with_val(self.work_prec, 0);
        for z in &self.zeta {
            let r = HPReal::with_val(self.work_prec, z.norm_sqr() - HPReal::with_val(self.work_prec, 1)).abs();
            if r > worst {
                worst = r;
            }
        }
        worst
    }

    pub fn check_table_integrity(&self) -> Result<()> {
        let bound = pow2(-(i64::from(self.precision_bits) - 8), self.work_prec);
        if self.unit_norm_residual() < bound {
            Ok(())
        } else {
            Err(QlfError::Internal(
                "zeta table lost unit modulus beyond tolerance".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_powers_are_unit_modulus() {
        for n in [1u32, 2, 7, 30] {
            let ctx = RootContext::new(n, 128, false).unwrap();
            assert!(ctx.check_table_integrity().is_ok());
        }
    }

    #[test]
    fn omega_relations() {
        let ctx = RootContext::new(12, 192, false).unwrap();
        // omega^N = 1
        let v = ctx.omega_pow(12);
        assert!(v.dist(&HPComplex::one(192)) < pow2(-150, 192));
        // zeta^{2N} = 1
        let v = ctx.zeta_pow(24);
        assert!(v.dist(&HPComplex::one(192)) < pow2(-150, 192));
    }

    #[test]
    fn binomial_value_matches_backends_and_limits() {
        let ctx = RootContext::new(9, 192, true).unwrap();
        for (top, k) in [(4u32, 2i64), (7, 3), (8, 5), (9, 4)] {
            let c = ctx.binomial_at_omega(top, k);
            let e = ctx.binomial_at_omega_exact(top, k).eval(ctx.work_prec());
            assert!(c.dist(&e) < pow2(-150, 192), "({top},{k})");
        }
        // [N choose k] at a primitive N-th root vanishes for 0 < k < N
        let v = ctx.binomial_at_omega(9, 4);
        assert!(v.abs() < pow2(-150, 192));
    }
}
