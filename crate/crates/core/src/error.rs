use thiserror::Error;

/// Errors raised while building or manipulating designs.
///
/// Verification outcomes are not errors: a checker that finds a violation
/// returns [`crate::arrays::Verdict::Fail`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("polynomial {poly} is reducible over Z_{p}: divisible by {factor}")]
    Reducible { poly: String, p: u32, factor: String },

    #[error("field order {0} exceeds the supported maximum of 256")]
    FieldTooLarge(u64),

    #[error("element {element} is not in {group}")]
    ElementOutOfRange { element: u32, group: String },

    #[error("cannot parse {text:?} as an element of {group}")]
    ParseElement { text: String, group: String },

    #[error("cannot parse group spec {0:?}")]
    ParseGroup(String),

    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: String, found: String },

    #[error("invalid projection: {0}")]
    InvalidProjection(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate index {0}")]
    DuplicateIndex(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input failed verification: {0}")]
    NotVerified(String),

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("format error: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
