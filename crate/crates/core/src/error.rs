use thiserror::Error;

use crate::poly::MultiIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("series has a vanishing constant term")]
    SingularSeries,

    #[error("series centers differ")]
    CenterMismatch,

    #[error("truncation box {requested} exceeds operand box {available}")]
    BoxMismatch {
        requested: MultiIndex,
        available: MultiIndex,
    },

    #[error("order condition violated: p{polynomial} has a nonzero term at index {index} inside the box")]
    OrderViolation {
        polynomial: usize,
        index: MultiIndex,
    },

    #[error("leading matrix is degenerate (det H_w(w) vanishes)")]
    DegenerateLeadingMatrix,

    #[error("Jacobian vanishes at the node")]
    DegenerateRoot,

    #[error("order vector must have every entry >= 1, got {0}")]
    InvalidOrder(MultiIndex),

    #[error("duplicate node at position {0}")]
    DuplicateNode(usize),

    #[error("data shape: {0}")]
    DataShape(String),

    #[error("oracle linear system is unsolvable: {0}")]
    OracleUnsolvable(String),

    #[error("system is not separable: p{0} depends on a foreign variable")]
    NotSeparable(usize),
}

impl Error {
    /// True for failures of a mathematical precondition on the system or node,
    /// as opposed to malformed input.
    pub fn is_precondition_failure(&self) -> bool {
        matches!(
            self,
            Error::OrderViolation { .. }
                | Error::DegenerateLeadingMatrix
                | Error::DegenerateRoot
                | Error::SingularSeries
        )
    }
}

pub(crate) fn check_arity(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Arity { expected, got })
    }
}
