use thiserror::Error;

use crate::system::ValidationReport;

/// Errors produced by the analysis library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("relation is not anti-symmetric; cycle through nodes {}", format_cycle(.witness))]
    Cycle { witness: Vec<usize> },

    #[error("node index {index} out of range for a poset on {p} elements")]
    IndexOutOfRange { index: usize, p: usize },

    #[error("partition has {found} parts, poset has {expected} elements")]
    PartitionMismatch { expected: usize, found: usize },

    #[error("incompatible shapes: {0}")]
    IncompatibleShapes(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("block zero pattern violated at block ({row}, {col})")]
    StructureViolation { row: usize, col: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("s = {0} is an eigenvalue of A; resolvent does not exist")]
    SingularResolvent(String),

    #[error("downstream set of S is not contained in R")]
    DownSetNotContained,

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("local pair (A_ii, B_ii) at node {node} is not controllable")]
    NotWeaklyLocallyControllable { node: usize },

    #[error("target polynomial for node {node}: {reason}")]
    InvalidTarget { node: usize, reason: String },

    #[error("pole placement did not converge at node {node}")]
    PlacementFailed { node: usize },

    #[error("inclusion hypothesis violated: {0}")]
    InclusionViolation(String),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("invalid input signal: {0}")]
    InvalidSignal(String),

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("malformed system file: {0}")]
    Format(String),

    #[error("system violates its poset structure ({} violating blocks)", .0.violations.len())]
    Validation(ValidationReport),
}

fn format_cycle(witness: &[usize]) -> String {
    witness
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" -> ")
}

pub type Result<T> = std::result::Result<T, Error>;
