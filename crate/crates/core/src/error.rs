use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("negative power of non-invertible generator `{0}`")]
    NonInvertiblePower(String),

    #[error("rewrite budget of {budget} steps exceeded on a word of length {length}")]
    RewriteBudget { budget: usize, length: usize },

    #[error("tensor arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("image of invertible generator `{0}` is not an invertible monomial")]
    NonInvertibleImage(String),

    #[error("missing image for generator `{0}`")]
    MissingImage(String),

    #[error("ratio is not a scalar: {0}")]
    NonScalarRatio(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid group parameter: {0}")]
    InvalidGroup(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("not a bicharacter: {0}")]
    NotBicharacter(String),

    #[error("operator is outside the group-algebra span (residual {0:e})")]
    OutsideSpan(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
