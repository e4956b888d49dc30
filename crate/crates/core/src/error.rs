use thiserror::Error;

pub type Result<T> = std::result::Result<T, FusionError>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FusionError {
    #[error("invalid label `{0}`")]
    InvalidLabel(String),

    #[error("incomplete table: no product entry for `{left}|{right}`")]
    IncompleteTable { left: String, right: String },

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("label budget {cap} exceeded (last complete radius {achieved_radius})")]
    BudgetExceeded { cap: usize, achieved_radius: usize },

    #[error("operator is not flagged self-adjoint")]
    NotSelfAdjoint,

    #[error("no convergence after {max_iter} iterations (estimate {estimate}, residual {residual:e})")]
    NoConvergence {
        max_iter: usize,
        estimate: f64,
        residual: f64,
    },

    #[error("measure is not symmetric under conjugation")]
    NonSymmetricMeasure,

    #[error("set must be non-empty")]
    EmptySet,

    #[error("measure does not charge the unit")]
    MeasureMissingUnit,

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("structure constant overflow")]
    Overflow,

    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}
