use thiserror::Error;

/// Errors raised across the library. Each variant maps onto one of the
/// command-line exit codes through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("support too large: {size} entries exceeds the enumeration cap of {cap}")]
    SupportTooLarge { size: u128, cap: u128 },

    #[error("no conditional mass: every instance has a marked index among the probed set")]
    ZeroConditionalMass,

    #[error("total weight is zero: no index is ever marked")]
    ZeroWeight,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unitary at step {step} deviates from unitarity by {deviation:e}")]
    NonUnitary { step: usize, deviation: f64 },

    #[error("z_{step} = {z} is outside [0, b_{step} = {b}]")]
    InvalidZ { step: usize, z: f64, b: f64 },

    #[error("{count} schedules exceed the enumeration cap of {cap}")]
    TooManySchedules { count: u128, cap: u128 },

    #[error("{count} classical strategies exceed the enumeration cap of {cap}")]
    TooManyStrategies { count: u128, cap: u128 },

    #[error("arity {n} exceeds the cap of {cap}")]
    ArityTooLarge { n: usize, cap: usize },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("closed form mismatch in {what}: computed {computed}, expected {expected}")]
    ClosedFormMismatch {
        what: &'static str,
        computed: f64,
        expected: f64,
    },

    #[error("lemma '{lemma}' violated at step {step}, instance {instance}: slack {slack:e}")]
    LemmaViolation {
        lemma: String,
        step: usize,
        instance: String,
        slack: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// 2: invalid input, 3: capacity exceeded, 4: lemma violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SupportTooLarge { .. }
            | Error::TooManySchedules { .. }
            | Error::TooManyStrategies { .. }
            | Error::ArityTooLarge { .. } => 3,
            Error::LemmaViolation { .. } => 4,
            _ => 2,
        }
    }

    /// Short machine-readable tag used in the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDistribution(_) => "InvalidDistribution",
            Error::InvalidInput(_) => "InvalidInput",
            Error::SupportTooLarge { .. } => "SupportTooLarge",
            Error::ZeroConditionalMass => "ZeroConditionalMass",
            Error::ZeroWeight => "ZeroWeight",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonUnitary { .. } => "NonUnitary",
            Error::InvalidZ { .. } => "InvalidZ",
            Error::TooManySchedules { .. } => "TooManySchedules",
            Error::TooManyStrategies { .. } => "TooManyStrategies",
            Error::ArityTooLarge { .. } => "ArityTooLarge",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::ClosedFormMismatch { .. } => "ClosedFormMismatch",
            Error::LemmaViolation { .. } => "LemmaViolation",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
