//! Exact arithmetic and dense exact linear algebra.
//!
//! Everything in this crate computes over exact coefficient domains: arbitrary
//! precision rationals, Gaussian rationals (`a + b*i`), and multivariate
//! polynomials with rational coefficients in graded-lexicographic canonical
//! form. There is deliberately no floating point here; ranks, kernels and
//! nilpotency answers are exact claims.

pub mod gauss;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod subspace;

pub use gauss::GaussRat;
pub use matrix::{ExactMatrix, SolveOutcome};
pub use poly::{Monomial, Poly, SquareRule};
pub use scalar::{rat, rint, RingTag, Scalar};
pub use subspace::Subspace;

use num::BigRational;

/// The exact rational type used throughout.
pub type Rat = BigRational;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("operation requires field entries (rational or gaussian); polynomial entries rejected")]
    PolyEntries,
    #[error("scalar is not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
