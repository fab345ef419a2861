//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by pmf construction, estimation, asymptotics, simulation,
/// and file ingestion.
#[derive(Debug)]
#[non_exhaustive]
pub enum Error {
    /// An index argument fell outside its documented 1-based range.
    IndexOutOfRange {
        name: &'static str,
        value: usize,
        max: usize,
    },
    /// A probability vector failed validation (length, sign, normalization,
    /// or a zero entry in strict mode).
    InvalidPmf(String),
    /// An entropy order was rejected (alpha must be positive, finite, and
    /// different from 1; the Shannon functional covers the limit).
    InvalidAlpha(String),
    /// The requested direction is not meaningful for the operation.
    InvalidDirection(String),
    /// A sample set was empty or contained an out-of-range outcome.
    InvalidSample(String),
    /// The estimator or standardization is undefined for this input, for
    /// example a vanishing conditioning power sum or a nonpositive sigma.
    Degenerate(String),
    /// A confidence or quantile level fell outside (0, 1).
    InvalidLevel(f64),
    /// Two pmfs that must share a shape do not.
    DimensionMismatch { expected: String, found: String },
    /// A simulation campaign configuration is invalid.
    InvalidConfig(String),
    /// An input file failed to parse; `line` is 1-based.
    Parse { line: usize, message: String },
    /// An underlying I/O failure.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { name, value, max } => {
                write!(f, "index {name}={value} out of range 1..={max}")
            }
            Error::InvalidPmf(msg) => write!(f, "invalid pmf: {msg}"),
            Error::InvalidAlpha(msg) => write!(f, "invalid alpha: {msg}"),
            Error::InvalidDirection(msg) => write!(f, "invalid direction: {msg}"),
            Error::InvalidSample(msg) => write!(f, "invalid sample: {msg}"),
            Error::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
            Error::InvalidLevel(level) => {
                write!(f, "level {level} outside the open interval (0, 1)")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid config: {msg}"),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}

impl Error {
    /// Stable machine-readable tag for the error kind, used by the CLI's
    /// JSON error envelope.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::InvalidPmf(_) => "invalid_pmf",
            Error::InvalidAlpha(_) => "invalid_alpha",
            Error::InvalidDirection(_) => "invalid_direction",
            Error::InvalidSample(_) => "invalid_sample",
            Error::Degenerate(_) => "degenerate",
            Error::InvalidLevel(_) => "invalid_level",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }

    /// True when the error is an I/O failure rather than a validation failure.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
