//! Root-of-unity evaluation backends and the torus-link invariant
//! computations: colored Jones values, Kashaev's invariant by nested sum,
//! and the O(N) theta-sum expression, with an exact group-ring backend for
//! cross-validation.

mod group_ring;
mod jones;
mod kashaev;
mod root_context;

pub use group_ring::{ExactValue, GroupRingElement};
pub use jones::colored_jones_ratio;
pub use kashaev::{kashaev_nested, kashaev_theta, y_series, y_series_exact, InvariantResult, Method};
pub use root_context::RootContext;
