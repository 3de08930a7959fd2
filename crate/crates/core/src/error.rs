use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("two-level rotation needs two distinct levels, got {0} twice")]
    DegenerateTarget(usize),

    #[error("level {index} out of range for dimension {dim}")]
    LevelOutOfRange { index: usize, dim: usize },

    #[error("degenerate ground state (gap {gap:e})")]
    DegenerateGround { gap: f64 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("pole in bare Green's function at frequency {0}")]
    Pole(f64),

    #[error("broadening must be positive for a convergent integral, got {0}")]
    Broadening(f64),

    #[error("expected a {expected} axis")]
    AxisMismatch { expected: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("window {window} exceeds trace length {len}")]
    Window { window: usize, len: usize },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("value {value} for `{key}` outside valid range [{min:?}, {max:?}]")]
    OutOfRange {
        key: String,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("cannot parse `{value}` for `{key}`: {reason}")]
    Parse {
        key: String,
        value: String,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
