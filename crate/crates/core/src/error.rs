use crate::exactalg::Field;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} too large (must be < 2^31)")]
    ModulusTooLarge(u64),

    #[error("zero denominator in rational literal")]
    ZeroDenominator,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("the zero subspace has no nonzero vectors")]
    ZeroSubspace,

    #[error("scale factor at index {index} is zero")]
    ZeroScale { index: usize },

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("ground set with {n} labels exceeds the exhaustive cap of {max}")]
    GroundTooLarge { n: usize, max: usize },

    #[error("family is not downward closed, circuits are undefined")]
    NotDownwardClosed,

    #[error("hypotheses not satisfied: {0}")]
    HypothesesNotMet(String),

    #[error("selection budget exceeded: {needed} selections needed, budget {budget}{}",
            subset_suffix(.subset))]
    BudgetExceeded {
        needed: u128,
        budget: u128,
        /// Offending label subset, when the failure occurred inside a
        /// subfamily enumeration.
        subset: Option<Vec<usize>>,
    },

    #[error("{0}")]
    Param(String),
}

fn subset_suffix(subset: &Option<Vec<usize>>) -> String {
    match subset {
        Some(labels) => format!(
            " (subset {{{}}})",
            labels
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
        None => String::new(),
    }
}
