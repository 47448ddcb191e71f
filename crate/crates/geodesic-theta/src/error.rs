use thiserror::Error;

/// Errors surfaced by configuration checks and exact computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("missing unity: 1 is not in the lattice")]
    MissingUnity,

    #[error("not a ring: {0}")]
    NotARing(String),

    #[error("lattice not closed under conjugation")]
    NotConjClosed,

    #[error("non-integral discriminant: {0}")]
    NonIntegralDiscriminant(String),

    #[error("singular basis matrix")]
    SingularBasis,

    #[error("embedding square mismatch: w^2 = {got}, expected {expected}")]
    EmbeddingSquareMismatch { got: String, expected: String },

    #[error("conductor mismatch: declared {declared}, computed {computed}")]
    ConductorMismatch { declared: u64, computed: u64 },

    #[error("embedding not integral")]
    EmbeddingNotIntegral,

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("not hyperbolic: |trace| <= 2")]
    NotHyperbolic,

    #[error("non-transversal: geodesics share an endpoint")]
    NonTransversal,

    #[error("precision exhaustion at {0} bits")]
    PrecisionExhaustion(u32),

    #[error("positivity precondition violated: q_F(b) is not totally positive")]
    NotTotallyPositive,

    #[error("tolerance not achieved: residual {0}")]
    ToleranceNotAchieved(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dual-method mismatch at n = {0}")]
    MethodMismatch(u32),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
