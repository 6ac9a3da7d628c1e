//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ball contains no samples")]
    EmptyBallSample,

    #[error("empty ball family")]
    EmptyBallFamily,

    #[error("no admissible balls; enlarge domain")]
    NoAdmissibleBalls,

    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("grid too coarse for t = {t:.3e}: need t >= {min_t:.3e}")]
    GridTooCoarse { t: f64, min_t: f64 },

    #[error("truncation radius {radius:.3} leaves no valid grid outputs")]
    TruncationExceedsDomain { radius: f64 },

    #[error("evaluation at a singular point")]
    SingularEvaluation,

    #[error("exact integral unsupported for kind {kind} in dimension {dim}")]
    UnsupportedExactIntegral { kind: String, dim: usize },

    #[error("exact essential infimum unsupported for kind {kind}")]
    UnsupportedExactEssinf { kind: String },

    #[error("essential infimum diverges to -inf on this ball")]
    DivergentEssinf,

    #[error("weight overflow: epsilon * max|f| = {0:.3} exceeds the exp guard 700")]
    WeightOverflow(f64),

    #[error("weight not locally integrable: |x|^(-{alpha}) needs alpha < dimension {dim}")]
    NonIntegrableWeight { alpha: f64, dim: usize },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("misclassified input: {0}")]
    Misclassified(String),

    #[error("empty evaluation set: {0}")]
    EmptyEvaluationSet(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
