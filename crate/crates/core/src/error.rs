use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("not a permutation: {0}")]
    NotBijection(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive")]
    Intransitive,
    #[error("group is not primitive")]
    Imprimitive,
    #[error("{what} exceeds cap ({value} > {cap})")]
    CapExceeded { what: String, value: String, cap: String },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("graph undefined: base size below 2")]
    BaseSizeBelowTwo,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn cap(what: &str, value: impl ToString, cap: impl ToString) -> Self {
        Error::CapExceeded {
            what: what.to_string(),
            value: value.to_string(),
            cap: cap.to_string(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
