//! The modular matrix M_m and the S/T transformation checks.
//!
//! S: Phi_m(tau) = (i/tau)^{3/2} M_m Phi_m(-1/tau) with the principal
//! branch, on the vector (Phi^{(m-2)}, ..., Phi^{(0)}). T is checked both
//! in exact form (every support exponent numerator of Phi_m^{(s)} is
//! congruent to (m-1-s)^2 mod 4m) and numerically at sample points.

use crate::error::{QlfError, Result};
use crate::modular::theta::{theta_eval, theta_series};
use crate::numeric::{pi, unit_phase_int, HPComplex, HPReal};

/// The (m-1) x (m-1) matrix (M_m)_{a,b} = sqrt(2/m) sin(ab pi/m).
pub struct ModularMatrix {
    pub m: u32,
    entries: Vec<Vec<HPReal>>,
}

impl ModularMatrix {
    pub fn entry(&self, a: usize, b: usize) -> &HPReal {
        &self.entries[a - 1][b - 1]
    }

    pub fn dim(&self) -> usize {
        (self.m - 1) as usize
    }

    /// max |(M^2 - I)_{ab}|.
    pub fn involution_residual(&self) -> HPReal {
        let dim = self.dim();
        let prec = self.entries[0][0].prec();
        let mut worst = HPReal::with_val(prec, 0);
        for a in 1..=dim {
            for b in 1..=dim {
                let mut acc = HPReal::with_val(prec, 0);
                for c in 1..=dim {
                    acc += HPReal::with_val(prec, self.entry(a, c) * self.entry(c, b));
                }
                if a == b {
                    acc -= HPReal::with_val(prec, 1);
                }
                let mag = acc.abs();
                if mag > worst {
                    worst = mag;
                }
            }
        }
        worst
    }

    /// max |M_{ab} - M_{ba}|, exactly zero in infinite precision.
    pub fn symmetry_residual(&self) -> HPReal {
        let dim = self.dim();
        let prec = self.entries[0][0].prec();
        let mut worst = HPReal::with_val(prec, 0);
        for a in 1..=dim {
            for b in 1..=dim {
                let mag = HPReal::with_val(prec, self.entry(a, b) - self.entry(b, a)).abs();
                if mag > worst {
                    worst = mag;
                }
            }
        }
        worst
    }

    pub fn mul_vector(&self, v: &[HPComplex]) -> Vec<HPComplex> {
        let dim = self.dim();
        assert_eq!(v.len(), dim);
        (1..=dim)
            .map(|a| {
                let mut acc = HPComplex::zero(v[0].prec());
                for (b, comp) in v.iter().enumerate() {
                    acc = acc.add(&comp.scale(self.entry(a, b + 1)));
                }
                acc
            })
            .collect()
    }
}

/// Build M_m at the requested precision.
pub fn modular_matrix(m: u32, prec: u32) -> Result<ModularMatrix> {
    if m < 2 {
        return Err(QlfError::InvalidParameter("m must be >= 2".into()));
    }
    let dim = (m - 1) as usize;
    let scale = (HPReal::with_val(prec, 2) / HPReal::with_val(prec, m)).sqrt();
    let mut entries = Vec::with_capacity(dim);
    for a in 1..=dim {
        let mut row = Vec::with_capacity(dim);
        for b in 1..=dim {
            let angle = pi(prec) * HPReal::with_val(prec, (a * b) as u64)
                / HPReal::with_val(prec, m);
            row.push(HPReal::with_val(prec, &scale * &angle.sin()));
        }
        entries.push(row);
    }
    Ok(ModularMatrix { m, entries })
}

/// Max-norm residual of Phi_m(tau) - (i/tau)^{3/2} M_m Phi_m(-1/tau)
/// over the family vector, principal branch.
pub fn s_transform_check(m: u32, tau: &HPComplex, prec: u32) -> Result<HPReal> {
    if m < 2 {
        return Err(QlfError::InvalidParameter("m must be >= 2".into()));
    }
    let work = prec + 32;
    let tau = tau.with_prec(work);
    let minus_inv = HPComplex::one(work).neg().div(&tau);
    let matrix = modular_matrix(m, work)?;

    // vector ordering a = m-2, ..., 0
    let left: Vec<HPComplex> = (0..=m - 2)
        .rev()
        .map(|a| theta_eval(m, a, &tau, work))
        .collect::<Result<Vec<_>>>()?;
    let right_raw: Vec<HPComplex> = (0..=m - 2)
        .rev()
        .map(|a| theta_eval(m, a, &minus_inv, work))
        .collect::<Result<Vec<_>>>()?;

    let i_over_tau = HPComplex::from_f64(0.0, 1.0, work).div(&tau);
    let factor = i_over_tau.pow_real(&(HPReal::with_val(work, 3) / HPReal::with_val(work, 2)));
    let right = matrix.mul_vector(&right_raw);

    let mut worst = HPReal::with_val(work, 0);
    for (l, r) in left.iter().zip(&right) {
        let mag = l.sub(&r.mul(&factor)).abs();
        if mag > worst {
            worst = mag;
        }
    }
    Ok(HPReal::with_val(prec, worst))
}

/// T-transform report: the exact support congruence plus numeric residuals.
pub struct TTransformReport {
    pub m: u32,
    /// per superscript s = 0..m-2: every stored exponent numerator of
    /// Phi_m^{(s)} is congruent to (m-1-s)^2 mod 4m
    pub exact_congruence: bool,
    /// residuals |Phi(tau+1) - phase * Phi(tau)| at the sample points
    pub residuals: Vec<HPReal>,
}

/// Checks Phi_m^{(s)}(tau+1) = e^{(m-1-s)^2 pi i/2m} Phi_m^{(s)}(tau):
/// exactly on the series support, numerically at the given points.
pub fn t_transform_check(m: u32, taus: &[HPComplex], prec: u32) -> Result<TTransformReport> {
    if m < 2 {
        return Err(QlfError::InvalidParameter("m must be >= 2".into()));
    }
    let mut exact = true;
    for s in 0..=m - 2 {
        let series = theta_series(m, s, 80)?;
        let target = i64::from((m - 1 - s) * (m - 1 - s)) % (4 * i64::from(m));
        for (k, _) in series.iter() {
            if k.rem_euclid(4 * i64::from(m)) != target {
                exact = false;
            }
        }
    }

    let mut residuals = Vec::new();
    for tau in taus {
        let tau1 = tau.add(&HPComplex::one(prec));
        let mut worst = HPReal::with_val(prec, 0);
        for s in 0..=m - 2 {
            let p = i64::from((m - 1 - s) * (m - 1 - s));
            let phase = unit_phase_int(p, 2 * i64::from(m), prec + 32);
            let lhs = theta_eval(m, s, &tau1, prec)?;
            let rhs = theta_eval(m, s, tau, prec)?.mul(&phase);
            let mag = lhs.dist(&rhs);
            if mag > worst {
                worst = mag;
            }
        }
        residuals.push(worst);
    }
    Ok(TTransformReport {
        m,
        exact_congruence: exact,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::pow2;

    #[test]
    fn m2_matrix_is_identity() {
        let m = modular_matrix(2, 128).unwrap();
        assert_eq!(m.dim(), 1);
        let one = HPReal::with_val(128, 1);
        assert!(HPReal::with_val(128, m.entry(1, 1) - &one).abs() < pow2(-120, 128));
    }

    #[test]
    fn m3_matrix_is_hadamard_like() {
        // (1/sqrt2) [[1,1],[1,-1]]
        let m = modular_matrix(3, 192).unwrap();
        let r = HPReal::with_val(192, 2).sqrt().recip();
        for (a, b, sign) in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, -1)] {
            let expect = HPReal::with_val(192, &r * HPReal::with_val(192, sign));
            assert!(HPReal::with_val(192, m.entry(a, b) - &expect).abs() < pow2(-180, 192));
        }
    }

    #[test]
    fn m4_matrix_display() {
        // (1/2) [[1, sqrt2, 1], [sqrt2, 0, -sqrt2], [1, -sqrt2, 1]]
        let m = modular_matrix(4, 192).unwrap();
        let h = HPReal::with_val(192, 2).sqrt() / HPReal::with_val(192, 2); // sqrt2/2
        let half = HPReal::with_val(192, 0.5f64);
        let zero = HPReal::with_val(192, 0);
        let grid: [[&HPReal; 3]; 3] = [[&half, &h, &half], [&h, &zero, &h], [&half, &h, &half]];
        let signs: [[i32; 3]; 3] = [[1, 1, 1], [1, 1, -1], [1, -1, 1]];
        for a in 1..=3usize {
            for b in 1..=3usize {
                let expect =
                    HPReal::with_val(192, grid[a - 1][b - 1] * HPReal::with_val(192, signs[a - 1][b - 1]));
                assert!(
                    HPReal::with_val(192, m.entry(a, b) - &expect).abs() < pow2(-180, 192),
                    "entry ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn involution_and_symmetry_to_m12() {
        for m in 2..=12u32 {
            let mm = modular_matrix(m, 256).unwrap();
            assert!(mm.symmetry_residual() < pow2(-240, 256), "symmetry m={m}");
            assert!(mm.involution_residual() < pow2(-240, 256), "M^2=I m={m}");
        }
    }

    #[test]
    fn s_transform_fixed_point_at_i() {
        // at tau = i the factor (i/tau)^{3/2} is 1, so Phi(i) = M Phi(i)
        let prec = 256;
        let tau = HPComplex::from_f64(0.0, 1.0, prec);
        for m in 2..=4u32 {
            let r = s_transform_check(m, &tau, prec).unwrap();
            assert!(r < pow2(-(i64::from(prec) - 48), prec), "m = {m}, r = {:?}", r.to_f64());
        }
    }

    #[test]
    fn s_transform_generic_points() {
        let prec = 256;
        for (m, re, im) in [(4u32, 0.3, 1.2), (3, 0.0, 2.0), (2, 0.3, 1.2)] {
            let tau = HPComplex::from_f64(re, im, prec);
            let r = s_transform_check(m, &tau, prec).unwrap();
            assert!(
                r < pow2(-(i64::from(prec) - 48), prec),
                "m = {m} at {re}+{im}i: residual {:?}",
                r.to_f64()
            );
        }
    }

    #[test]
    fn t_transform_exact_and_numeric() {
        let prec = 192;
        let taus = [
            HPComplex::from_f64(0.0, 1.0, prec),
            HPComplex::from_f64(0.3, 1.2, prec),
            HPComplex::from_f64(-0.7, 0.9, prec),
        ];
        for m in 2..=4u32 {
            let report = t_transform_check(m, &taus, prec).unwrap();
            assert!(report.exact_congruence, "support congruence m={m}");
            for r in &report.residuals {
                assert!(*r < pow2(-(i64::from(prec) - 40), prec));
            }
        }
    }
}
