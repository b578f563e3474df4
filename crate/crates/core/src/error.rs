use thiserror::Error;

/// Errors raised by evaluation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension d = {0}")]
    InvalidDimension(i64),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("degenerate index pair: {0}")]
    DegenerateIndex(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("x-bar is undefined for m <= 1 (got m = {0})")]
    UndefinedXbar(String),
    #[error("pole at |x| = 1: {0}")]
    Pole(String),
    #[error("pair is outside the requested regime: {0}")]
    WrongRegime(String),
    #[error("arguments outside the supported envelope: {0}")]
    UnsupportedRange(String),
    #[error("removable singularity: {0}")]
    Singular(String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("value overflows f64 (log magnitude {0})")]
    Overflow(f64),
    #[error("value underflows f64 (log magnitude {0})")]
    Underflow(f64),
    #[error("integer overflow in {0}")]
    IntegerOverflow(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
