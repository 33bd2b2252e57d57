//! Exact construction and verification of matroids derived from linearly
//! independent set families.
//!
//! A *linearly independent set family* (LISF) is a family of non-empty vector
//! sets such that every selection of one vector per set is linearly
//! independent. Taking the label subsets whose subfamilies are LISFs yields an
//! independence system that generalizes the classical column matroid of a
//! matrix; under suitable hypotheses on the sets it is a matroid, and without
//! them the exchange axiom can fail.
//!
//! The crate is organized in four layers:
//!
//! * [`exactalg`] — exact scalars, vectors, matrices and subspaces over the
//!   rationals and prime fields; every independence decision reduces to a rank
//!   computation here.
//! * [`setfamily`] — vector-set families, the LISF decision procedure with
//!   dependence witnesses, a sampling cross-check, and the scaling /
//!   isomorphism / symmetrization transforms.
//! * [`matroid`] — explicit independence systems over small ground sets:
//!   axiom checking with witnesses, rank/bases/circuits, the column matroid of
//!   a matrix, and greedy vs. exhaustive weight optimization.
//! * [`constructions`] — the bridge from set families to independence
//!   systems, hypothesis checkers for the two matroid-producing regimes,
//!   built-in counterexample families, and random instance generators.
//!
//! All values are immutable after construction and all operations are pure
//! functions of their inputs, so everything can be shared freely across
//! threads.

pub mod constructions;
mod error;
pub mod exactalg;
pub mod matroid;
pub mod setfamily;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

// Re-exported so downstream crates can name exact weights and coordinates
// without depending on the num stack directly.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
