//! High-precision evaluation of sums over nontrivial zeros of the Riemann
//! zeta function against their explicit asymptotic expansions.
//!
//! The library computes both sides of identities of the form
//!
//!   sum_{0 < gamma <= T} zeta^(n)(rho) X^rho  =  explicit main terms + error
//!
//! for positive rational X: the left side by direct summation over a
//! verified-complete table of zero ordinates, the right side from the
//! explicit expansions (general real X, integer X with Laurent-coefficient
//! main terms, the X = 1 theorem, and the classical n = 1 baselines), and
//! quantifies the residual against the stated error envelopes.
//!
//! Modules:
//! - [`numkern`]: zeta, its derivatives, chi, xi'/xi, Riemann-Siegel theta/Z
//! - [`zeros`]: zero tables with Riemann-von Mangoldt completeness proofs
//! - [`arith`]: von Mangoldt, Delta(X), convolution and exponential sums
//! - [`constants`]: Laurent coefficients C_j, A_j and their cross-oracles
//! - [`expansions`]: every right-hand-side formula, term by term
//! - [`zerosum`]: left-hand sums and residual comparison
//! - [`report`]: deterministic CSV/JSON rendering

pub mod arith;
pub mod constants;
pub mod error;
pub mod expansions;
pub mod numkern;
pub mod precision;
pub mod report;
pub(crate) mod sieve;
pub mod zeros;
pub mod zerosum;

// The bignum backend is part of the public surface (Float/Complex appear
// in signatures), so downstream crates use one consistent version.
pub use rug;

pub use error::{Error, Result};
pub use precision::{CValue, PrecisionContext};
