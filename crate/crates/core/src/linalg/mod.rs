//! Exact scalars and dense linear algebra.

pub mod matrix;
pub mod scalar;

pub use matrix::{canonical_basis, Matrix, Subspace};
pub use scalar::{is_prime, FieldSpec, Fp, Rational, Scalar};
