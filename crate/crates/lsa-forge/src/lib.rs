//! A workbench for left-symmetric (pre-Lie) algebras given by structure
//! constants: identity certification, completeness, ideals and centers,
//! extensions and second cohomology, automorphism-orbit classification, and
//! numeric verification of the induced simply transitive affine actions.
//!
//! All algebraic computation is exact (see the `lsa-exact` crate); only the
//! affine realization module works in doubles, and every numeric check there
//! carries an explicit tolerance and seed.

pub mod affine;
pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod extension;
pub mod report;
pub mod textfmt;

pub use algebra::{Algebra, AlgebraKind, Element};
pub use lsa_exact::{rat, rint, ExactMatrix, GaussRat, Poly, Rat, RingTag, Scalar, Subspace};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] lsa_exact::Error),
    #[error("unknown catalog name: {0}")]
    UnknownCatalogName(String),
    #[error("missing parameter {0}")]
    MissingParam(String),
    #[error("{0}")]
    IdentityCheckFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
