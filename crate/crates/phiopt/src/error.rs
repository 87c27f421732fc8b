use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum PhiError {
    #[error("invalid TPM shape: {rows} rows x {cols} cols (need 2^D rows and D columns, D >= 1)")]
    InvalidShape { rows: usize, cols: usize },

    #[error("TPM entry out of range at row {row}, col {col}: {value} (must lie in [0, 1])")]
    OutOfRange { row: usize, col: usize, value: f64 },

    #[error("state length {got} does not match node count {expected}")]
    StateMismatch { got: usize, expected: usize },

    #[error("repertoires are over different purviews")]
    PurviewMismatch,

    #[error("constellations are over different node sets ({a} vs {b} nodes)")]
    NodeSetMismatch { a: usize, b: usize },

    #[error("undefined repertoire: the mechanism state has zero probability under every purview state")]
    UndefinedRepertoire,

    #[error("infeasible state: integrated information is not defined there")]
    InfeasibleState,

    #[error("node count {nodes} exceeds the evaluation budget guardrail ({limit})")]
    Budget { nodes: usize, limit: usize },

    #[error("insufficient data: need at least {need} values, got {got}")]
    InsufficientData { need: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, PhiError>;
