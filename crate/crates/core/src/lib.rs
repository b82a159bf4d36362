//! Mantissa dynamics of random products.
//!
//! The product `Y_n = X_1 ⋯ X_n` of positive random variables is tracked in
//! fractional-log coordinates `s_n = {log_b Y_n}`. Everything in this crate
//! works on that circle: generators emit `{log_b X_n}`, the walk adds them
//! modulo one, and the statistics and checks measure how far the resulting
//! points are from the uniform law (equivalently, how far the mantissae are
//! from Benford's law).
//!
//! Module map:
//!
//! * [`mantissa`]: bases, fractional logarithms, the Benford measure, phases.
//! * [`generators`]: seeded streams for every supported family of `X_n`.
//! * [`walk`]: trajectory accumulation and Weyl prefix averages.
//! * [`statistics`]: KS / star discrepancy, first-digit χ², Monte Carlo
//!   Fourier coefficients.
//! * [`checks`]: verdicts for the convergence conditions and invariances.
//! * [`scenario`]: JSON scenarios, command dispatch and CSV/JSON emission.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
mod error;
pub mod generators;
pub mod mantissa;
pub mod parallel;
pub mod scenario;
pub mod statistics;
pub mod walk;

pub use error::{Error, Result};
pub use generators::{derive_seed, Family, GeneratorSpec, Seed, Stream};
pub use mantissa::{Base, FracLog, Harmonic};
pub use walk::{MantissaTrajectory, WeylSeries};
