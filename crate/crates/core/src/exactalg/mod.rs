//! Exact scalar, vector, matrix and subspace arithmetic over the rationals
//! and prime fields.
//!
//! There is no floating point anywhere in this module: rationals use
//! arbitrary-precision integers kept in lowest terms, and GF(p) elements are
//! residues with 64-bit intermediates. Subspaces are stored as reduced
//! row echelon bases, so two values represent the same subspace exactly when
//! they compare equal.

mod field;
mod matrix;
mod scalar;
mod subspace;
mod vector;

pub use field::Field;
pub use matrix::{is_linearly_independent, Matrix, Rref};
pub use scalar::Scalar;
pub use subspace::{is_direct_sum, subspace_sum, Subspace};
pub use vector::Vector;
