//! Exact-arithmetic toolkit for biased riffle shuffles and their symmetric
//! function theory.
//!
//! The library is organized around a family of card shuffles driven by three
//! parameter groups (positive pile weights `alpha`, reversed pile weights
//! `beta`, and a fully-mixed weight `gamma`), the signed-word variant of the
//! Robinson-Schensted-Knuth correspondence, and the extended complete
//! homogeneous / Schur / power-sum functions attached to those parameters.
//! Everything that can be exact is exact: probabilities, series coefficients,
//! and determinants are `BigRational` throughout, with floating point used
//! only for Poissonized gap probabilities and limit-law comparisons.

pub mod combinatorics;
pub mod cycles;
pub mod error;
pub mod linalg;
pub mod points;
pub mod rational;
pub mod rsk;
pub mod series;
pub mod shuffle;
pub mod symmetric;
pub mod toeplitz;

/// Exact rational scalar used everywhere precision matters.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Truncated power series with exact rational coefficients.
pub type RatSeries = series::TruncatedSeries<Rat>;

pub use error::Error;
