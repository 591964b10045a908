//! Exact scalars and dense matrices.

mod matrix;
mod scalar;

pub use matrix::{inverse, kernel_basis, kron, mat_mul, Matrix, Subspace};
pub use scalar::{is_prime, Field, Scalar};
