use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error in {what}: {msg}")]
    Parse { what: &'static str, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("({p}, {q}) is not a coprime pair with p, q >= 2")]
    NotCoprime { p: i64, q: i64 },

    #[error("invalid PD code: {0}")]
    InvalidPd(String),

    #[error("PD code describes a link with {0} components; a knot is required")]
    MultiComponent(usize),

    #[error("homomorphism to Z^k is not well defined: {0}")]
    BadHomomorphism(String),

    #[error("exponent {0} exceeds the supported bound of 10^6")]
    ExponentOverflow(i64),

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("singular selection ({which}): {msg}")]
    SingularSelection { which: &'static str, msg: String },

    #[error("matrix is not unimodular over Z")]
    NotUnimodular,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, msg: impl Into<String>) -> Self {
        Error::Parse { what, msg: msg.into() }
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
