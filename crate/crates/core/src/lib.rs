//! Exact constructions around Hermite reciprocity for `SL_2`: divided, symmetric and exterior
//! powers of the standard representation, the reciprocity isomorphisms as explicit matrices,
//! cohomology of Schwarzenberger bundles, Hankel determinantal rings and Weyman modules.

pub mod hankel;
pub mod hermite;
pub mod koszul_oracle;
pub mod linalg;
pub mod multilinear;
pub mod schwarzenberger;
pub mod verify;
pub mod weyman;

use thiserror::Error;

pub use linalg::{ExactMatrix, Field, LinalgError, Scalar};
pub use multilinear::{CharPoly, SpaceExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported twist window: {0}")]
    UnsupportedTwistWindow(String),
    #[error("resource guard: {what} needs {size}, limit is {limit}")]
    ResourceLimit { what: String, size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::InvalidParameter`] unless `cond` holds.
pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
