use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("overlap: upstairs and downstairs share {0} (sheaf would not be irreducible)")]
    Overlap(String),
    #[error("wild order: character {0} has order divisible by p={1}")]
    WildOrder(String, u64),
    #[error("type error: D={0} must exceed m={1}")]
    Type(usize, usize),
    #[error("excluded case: {0}")]
    Excluded(String),
    #[error("enumeration cap {0} exceeded")]
    CapExceeded(usize),
    #[error("singular or infinite-order generator")]
    Singular,
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the command-line surface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 1,
            Error::CapExceeded(_) => 3,
            Error::OracleMismatch(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
