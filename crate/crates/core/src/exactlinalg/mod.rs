//! Exact integer linear algebra: scalars, dense matrices and integer lattices.

mod lattice;
mod matrix;
mod scalar;

pub use lattice::{hnf, lattice_contains, IntegerLattice};
pub use matrix::{mat_mul, Matrix, Vector};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("rows have differing lengths")]
    Ragged,
    #[error("matrix is singular")]
    Singular,
}
