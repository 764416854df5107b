use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid universe `{name}`: {reason}")]
    InvalidUniverse { name: String, reason: String },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("membership vector has {got} degrees but universe `{universe}` has {expected} grid points")]
    LengthMismatch {
        universe: String,
        expected: usize,
        got: usize,
    },

    #[error("non-finite membership degree at index {0}")]
    NonFiniteDegree(usize),

    #[error("universe mismatch: expected `{expected}`, got `{got}`")]
    UniverseMismatch { expected: String, got: String },

    #[error("degree {value} for `{arg}` is outside [0, 1]")]
    DegreeOutOfRange { arg: &'static str, value: f64 },

    #[error("rule semantics mismatch: {0}")]
    SemanticsMismatch(String),

    #[error("unsupported operator: {0}")]
    UnsupportedOperator(String),

    #[error("unknown operator name `{0}`")]
    UnknownOperator(String),

    #[error("search space too large: {0}")]
    SearchSpaceOverflow(String),

    #[error("{0}")]
    Problem(String),

    #[error("i/o error on `{path}`: {message}")]
    Io { path: String, message: String },
}
