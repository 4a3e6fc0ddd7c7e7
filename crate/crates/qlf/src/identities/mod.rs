//! The q-series K_m^{(a)} in one and many variables, the main identity
//! against its theta-type closed form, and the supporting q-difference
//! recurrences, all verified coefficientwise at finite truncation.

mod kseries;
mod multivar;

pub use kseries::{
    k_rhs, k_series, phi_weighted_series, verify_difference_equation, verify_main_identity,
    IdentityReport, KSeriesSpec,
};
pub use multivar::{verify_multivariate_recurrences, MultiKSpec, MultiSeries, RecurrenceReport};
