//! Error types shared by every module of the crate.

use thiserror::Error;

/// Errors produced by transform evaluation, rule construction, moment
/// solves, and the validation oracles.
#[derive(Debug, Clone, Error)]
pub enum OhtError {
    /// Requested oscilland label is not in the registry.
    #[error("unknown oscilland label `{0}`")]
    NotRegistered(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid parameter (orders, truncation indices, grids).
    #[error("invalid parameter: {0}")]
    Param(String),

    /// An evaluation produced a non-finite value or is not defined.
    #[error("evaluation error: {0}")]
    Eval(String),

    /// An evaluation returned a non-finite value at a quadrature node.
    #[error("non-finite integrand at quadrature node {index}")]
    EvalAtNode { index: usize },

    /// A linear system arising from a moment recurrence could not be solved.
    #[error("linear solve failed: {0}")]
    Solve(String),

    /// A reference (oracle) evaluation failed to converge to its target.
    #[error("oracle did not converge: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, OhtError>;
