//! Truncated formal power series in q^{1/D} over exact integers, plus
//! Gaussian binomials, q-Pochhammer products and Dedekind eta series.

mod binomial;
mod biseries;
mod products;
mod series;

pub use binomial::{gauss_binomial, QBinomialTable};
pub use biseries::BiSeries;
pub use products::{dedekind_eta, pochhammer};
pub use series::FormalSeries;

/// Default truncation order (in whole-q units) for series constructors.
pub const DEFAULT_ORDER: i64 = 100;
