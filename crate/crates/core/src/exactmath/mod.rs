//! Exact arithmetic foundation: arbitrary-precision rationals, integer
//! matrix normal forms, lattice saturation and cyclotomic-field arithmetic.

pub mod cyclotomic;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod rat;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("characteristic polynomial has a non-cyclotomic factor; the matrix has infinite order")]
    NotFiniteOrder,
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
