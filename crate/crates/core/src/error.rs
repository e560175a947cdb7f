use thiserror::Error;

/// Errors raised by the evaluation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("gamma function pole at {0}")]
    PoleOfGamma(String),

    #[error("singular series term at n = {0}")]
    SingularTerm(u64),

    #[error("precision exhausted: cancellation consumed {consumed} of {available} digits")]
    PrecisionExhausted { consumed: u32, available: u32 },

    #[error("coefficient solve ill-conditioned: residual {residual} exceeds gate {gate}")]
    IllConditioned { residual: String, gate: String },

    #[error("expansion argument is zero")]
    ZeroArgument,

    #[error("truncation unstable in {label}: no minimum found within {cap} terms")]
    TruncationUnstable { label: String, cap: usize },

    #[error("higher-order pole in algebraic expansion at k = {0}")]
    HigherOrderPole(usize),

    #[error("double pole: k_s is an integer at k = {0}")]
    DoublePole(usize),

    #[error("sector unsupported: {0}")]
    SectorUnsupported(String),

    #[error("invalid precision {0}: at least 20 decimal digits are required")]
    InvalidPrecision(u32),

    #[error("cannot parse number {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
