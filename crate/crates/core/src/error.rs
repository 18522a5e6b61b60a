use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid weight {0:?}: entries must weakly decrease")]
    NonDominantWeight(Vec<i64>),
    #[error("genericness violated: {0}")]
    Genericness(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("scalar kinds mixed: exact and numeric values cannot be combined")]
    ScalarKindMismatch,
    #[error("eigen-decomposition did not converge (residual {residual})")]
    NonConvergence { residual: String },
    #[error("defective or nearly defective matrix: {0}")]
    Defective(String),
    #[error("degenerate spectrum: {0}")]
    Degenerate(String),
    #[error("rank deficient: rank {rank} < {dim}")]
    RankDeficient { rank: usize, dim: usize },
    #[error("zero vector produced: {0}")]
    ZeroVector(String),
    #[error("no Baxter solution for q_{index} up to degree {max_degree} (best residual {best})")]
    NoBaxterSolution { index: usize, max_degree: usize, best: String },
    #[error("ambiguous Baxter degree for q_{index}: degrees {degrees:?} both pass")]
    AmbiguousDegree { index: usize, degrees: Vec<usize> },
    #[error("inexact polynomial division (remainder norm {0})")]
    InexactDivision(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("precision too low: {digits} digits (need at least {needed})")]
    PrecisionTooLow { digits: u32, needed: u32 },
    #[error("prerequisite failed: {0}")]
    Prerequisite(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
