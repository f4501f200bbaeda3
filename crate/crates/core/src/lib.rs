//! Exact homological algebra for finite-dimensional bound quiver algebras.

pub mod algebra;
pub mod complexes;
pub mod decomp;
pub mod error;
pub mod harness;
pub mod igusa_todorov;
pub mod invariants;
pub mod linalg;
pub mod module;
pub mod session;

pub use algebra::{Algebra, Quiver};
pub use error::{Error, Result};
pub use linalg::{FieldSpec, Fp, Matrix, Rational, Scalar};

pub type F101 = Fp<101>;
pub type F1009 = Fp<1009>;
pub type F65521 = Fp<65521>;
pub type F2147483647 = Fp<2147483647>;
