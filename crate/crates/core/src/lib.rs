//! Special-function numerics for the generalized gamma function Γ₁, the
//! Riemann zeta function on the real line, and the constants tied to them
//! (L₀ = ln √(2π), L₁ = ln A, Euler's C, ζ(3), ζ′(2), ζ′(−1), ζ′(−2)).
//!
//! Every constant is reachable by at least two independent routes so the
//! routes can be checked against each other. The [`qed`] module evaluates
//! the one-loop Heisenberg–Euler Lagrangian in a constant magnetic field by
//! proper-time quadrature, closed form and strong-field asymptotics.
//!
//! Working precision is binary64 throughout.

#![allow(clippy::excessive_precision)]

pub mod constants;
mod error;
pub mod gamma;
pub mod kernel;
pub mod qed;
pub mod quadrature;
mod report;
pub mod zeta;

pub use error::{Error, Result};
pub use kernel::{
    bernoulli, bernoulli_f64, compensated_sum, BernoulliTable, CompensatedSum, PrecisionContext,
    SeriesValue,
};
pub use report::IdentityReport;
