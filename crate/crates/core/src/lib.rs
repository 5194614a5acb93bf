//! Poincaré multipliers for positive polynomials.
//!
//! A monic real polynomial `f` is *positive* if `f(x) > 0` for all `x > 0`.
//! Poincaré showed that `f` is positive exactly when some monic `g` makes
//! every coefficient of `g·f` non-negative; such a `g` is a Poincaré
//! multiplier for `f`. For a quadratic with non-real roots `r·e^{±iθ}` the
//! smallest possible multiplier degree is `s = ⌈π/θ⌉ − 2`.
//!
//! This crate computes optimal-degree multipliers along several independent
//! routes (a coefficient recurrence, a banded determinant, a closed
//! trigonometric form, and Meissner's classical multiplier), certifies the
//! results, proves that no smaller degree works, and compares the multiplier
//! families coefficient by coefficient. Everything is plain `f64` arithmetic
//! with explicit tolerances.

pub mod compare;
pub mod composer;
pub mod multiplier;
pub mod optimality;
pub mod poly;
pub mod tmatrix;

#[cfg(feature = "cli")]
pub mod cli;

mod error;

pub use error::Error;
pub use multiplier::{optimal_degree, MultiplierCertificate, Provenance};
pub use poly::{PolarQuadratic, Polynomial, Positivity};
pub use tmatrix::TMatrix;
