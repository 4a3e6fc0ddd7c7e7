//! Affine su(2) characters: ch_lambda^m(tau) = Phi_{m+2}^{(m-lambda)}(tau) / (2 eta(tau)^3).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{QlfError, Result};
use crate::modular::theta::theta_series;
use crate::qseries::{dedekind_eta, FormalSeries};

/// The level-m character with highest weight lambda, 0 <= lambda <= m,
/// as a series quotient at truncation.
pub fn su2_character(level: u32, lambda: u32, q_order: i64) -> Result<FormalSeries> {
    if lambda > level {
        return Err(QlfError::InvalidParameter(format!(
            "lambda must satisfy 0 <= lambda <= level = {level}, got {lambda}"
        )));
    }
    let phi = theta_series(level + 2, level - lambda, q_order)?;
    // every theta coefficient is even (the fold doubles); halve first, then
    // divide by the unit-lead eta^3
    let mut half = FormalSeries::zero(phi.denom(), q_order);
    for (k, c) in phi.iter() {
        let (q, r) = num_integer::Integer::div_rem(c, &BigInt::from(2));
        if !r.is_zero() {
            return Err(QlfError::SeriesDivision(format!(
                "odd theta coefficient {c} at exponent {k}"
            )));
        }
        half.set_term(*k, q);
    }
    let eta3 = dedekind_eta(1, 1, q_order)?.pow(3);
    half.div_exact(&eta3)
}
