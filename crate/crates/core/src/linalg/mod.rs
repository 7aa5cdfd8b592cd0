//! Exact scalars and sparse matrices over `Q` and `F_p`.

mod elim;
mod matrix;
mod scalar;

pub use matrix::ExactMatrix;
pub use scalar::{is_prime, Field, Scalar, MAX_MODULUS};

pub(crate) use elim::{Echelon, PArith, SparseRow};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus {0} is not a prime below 2^62")]
    InvalidModulus(u64),
    #[error("cannot combine values over {0} and {1}")]
    MixedFields(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value has a denominator divisible by {modulus}")]
    NotIntegral { modulus: u64 },
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("space labels do not match in {op}: {left} vs {right}")]
    LabelMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("entry ({row}, {col}) is outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
}
