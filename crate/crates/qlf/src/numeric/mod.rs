//! Exact integer/rational arithmetic, Bernoulli polynomials, L-function
//! values at negative integers, periodic characters, and arbitrary-precision
//! complex scalars.

mod bernoulli;
mod chi;
mod hp;
mod lvalue;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial};
pub use chi::{chi_eval, PeriodicChar};
pub use hp::{
    pi, pow2, real_from_rational, real_to_decimal, unit_phase, unit_phase_int, HPComplex, HPReal,
};
pub use lvalue::{l_value, l_value_real};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Default working precision in bits for all analytic evaluations.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// Exact rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
