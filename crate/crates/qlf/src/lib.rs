//! Quantum invariants of torus links `T(2,2m)` and the q-series machinery
//! behind them.
//!
//! The crate has four layers:
//!
//! * [`numeric`] — exact big-integer/rational arithmetic, Bernoulli
//!   polynomials, L-function values at negative integers, the odd periodic
//!   characters `chi_{2m}^{(a)}`, and arbitrary-precision complex scalars.
//! * [`qseries`] — truncated formal power series in `q^{1/D}` with exact
//!   integer coefficients, Gaussian binomials by the Pascal recurrence,
//!   q-Pochhammer products and Dedekind eta series.
//! * [`identities`], [`characters`], [`modular`] — the q-series identity
//!   `K_m^{(a)}(x) = sum chi(n) q^{(n^2-(m-1-a)^2)/4m} x^{(n-(m-1-a))/2}`,
//!   its q-difference equations, generalized Euler numbers by two routes,
//!   theta series of weight 3/2, their Eichler integrals, eta-product
//!   identities and affine su(2) characters.
//! * [`invariants`], [`asymptotics`] — evaluation at roots of unity
//!   (Kashaev's invariant by nested sum and by an O(N) theta sum, with an
//!   exact group-ring backend), and the numerical harness for the
//!   asymptotic expansions.
//!
//! The `qlf` binary exposes everything as CLI subcommands emitting
//! reproducible JSON reports; see [`cli`].

pub mod asymptotics;
pub mod characters;
pub mod cli;
pub mod error;
pub mod identities;
pub mod invariants;
pub mod modular;
pub mod numeric;
pub mod qseries;
pub mod report;

pub use error::QlfError;

/// Version string stamped into every run report.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
