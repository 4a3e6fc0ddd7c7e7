//! Coefficientwise eta-product identities for the m = 2, 3, 4 theta
//! families: Jacobi's Phi_2^{(0)} = 2 eta^3, the m = 3 quotients, and the
//! m = 4 sum/difference pair on the 1/48 exponent grid.

use num_bigint::BigInt;

use crate::error::{QlfError, Result};
use crate::modular::theta::theta_series;
use crate::qseries::{dedekind_eta, FormalSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaCase {
    M2,
    M3,
    M4,
}

impl EtaCase {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "m2" => Ok(EtaCase::M2),
            "m3" => Ok(EtaCase::M3),
            "m4" => Ok(EtaCase::M4),
            other => Err(QlfError::InvalidParameter(format!(
                "unknown eta-identity case '{other}' (expected m2, m3 or m4)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EtaIdentityReport {
    pub case: String,
    pub q_order: i64,
    pub identities: Vec<(String, bool, Option<(i64, i64)>)>,
}

impl EtaIdentityReport {
    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(|(_, ok, _)| *ok)
    }
}

/// Exact quotient with a multiply-back remainder check.
fn checked_quotient(num: &FormalSeries, den: &FormalSeries) -> Result<FormalSeries> {
    let q = num.div_exact(den)?;
    let back = q.mul(den);
    if let Some((k, d)) = back.first_discrepancy(num) {
        return Err(QlfError::SeriesDivision(format!(
            "quotient remainder nonzero at exponent {k}/{d}"
        )));
    }
    Ok(q)
}

pub fn eta_identity_check(case: EtaCase, q_order: i64) -> Result<EtaIdentityReport> {
    let mut identities = Vec::new();
    let mut push = |name: &str, lhs: &FormalSeries, rhs: &FormalSeries| {
        let disc = lhs.first_discrepancy(rhs);
        identities.push((name.to_string(), disc.is_none(), disc));
    };

    match case {
        EtaCase::M2 => {
            // Jacobi: Phi_2^{(0)} = 2 eta(tau)^3
            let phi = theta_series(2, 0, q_order)?;
            let eta3 = dedekind_eta(1, 1, q_order)?.pow(3).scale(&BigInt::from(2));
            push("phi_2_0 = 2 eta(tau)^3", &phi, &eta3);
        }
        EtaCase::M3 => {
            // Phi_3^{(0)} = 4 (eta(tau) eta(4tau))^2 / eta(2tau)
            let phi0 = theta_series(3, 0, q_order)?;
            let num = dedekind_eta(1, 1, q_order)?
                .mul(&dedekind_eta(4, 1, q_order)?)
                .pow(2)
                .scale(&BigInt::from(4));
            let rhs0 = checked_quotient(&num, &dedekind_eta(2, 1, q_order)?)?;
            push("phi_3_0 = 4 (eta(t) eta(4t))^2 / eta(2t)", &phi0, &rhs0);

            // Phi_3^{(1)} = 2 eta(2tau)^5 / eta(4tau)^2
            let phi1 = theta_series(3, 1, q_order)?;
            let num = dedekind_eta(2, 1, q_order)?.pow(5).scale(&BigInt::from(2));
            let rhs1 = checked_quotient(&num, &dedekind_eta(4, 1, q_order)?.pow(2))?;
            push("phi_3_1 = 2 eta(2t)^5 / eta(4t)^2", &phi1, &rhs1);
        }
        EtaCase::M4 => {
            // Phi_4^{(1)} = 4 eta(2tau)^3
            let phi1 = theta_series(4, 1, q_order)?;
            let rhs1 = dedekind_eta(2, 1, q_order)?.pow(3).scale(&BigInt::from(4));
            push("phi_4_1 = 4 eta(2t)^3", &phi1, &rhs1);

            // the shared quotient (eta(tau)^3/(eta(tau/2) eta(2tau)))^3
            let num = dedekind_eta(1, 1, q_order)?.pow(3);
            let den = dedekind_eta(1, 2, q_order)?.mul(&dedekind_eta(2, 1, q_order)?);
            let quot = checked_quotient(&num, &den)?.pow(3);
            let eta_half_cubed = dedekind_eta(1, 2, q_order)?.pow(3);

            let phi0 = theta_series(4, 0, q_order)?;
            push(
                "phi_4_0 = (eta(t)^3/(eta(t/2) eta(2t)))^3 - eta(t/2)^3",
                &phi0,
                &quot.sub(&eta_half_cubed),
            );
            let phi2 = theta_series(4, 2, q_order)?;
            push(
                "phi_4_2 = (eta(t)^3/(eta(t/2) eta(2t)))^3 + eta(t/2)^3",
                &phi2,
                &quot.add(&eta_half_cubed),
            );
        }
    }

    Ok(EtaIdentityReport {
        case: format!("{case:?}").to_lowercase(),
        q_order,
        identities,
    })
}
