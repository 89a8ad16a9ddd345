use thiserror::Error;

/// Errors raised by the library.
///
/// The variants mirror the failure classes of the public operations: empty or
/// malformed languages, depth bounds that would make a result unsound,
/// dimension and signature mismatches, and the precondition failures of the
/// algebraic and categorical constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty language: {0}")]
    Empty(String),

    #[error("depth {requested} exceeds the known depth {available} of {what}")]
    Depth {
        what: String,
        requested: usize,
        available: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dim(String),

    #[error("signature mismatch: {0}")]
    Sig(String),

    #[error("invalid map: {0}")]
    Map(String),

    #[error("algebra is not finitely generated")]
    NotFinitelyGenerated,

    #[error("not a congruence: {0}")]
    Congruence(String),

    #[error("variable out of range: {0}")]
    Var(String),

    #[error("derivor is not canonical: {0}")]
    Canon(String),

    #[error("map does not preserve concurrency: {0}")]
    Concurrency(String),

    #[error("unknown check id `{0}`")]
    CheckId(String),

    #[error("invalid symbol `{0}`")]
    Symbol(String),

    #[error("search limit exceeded: {0}")]
    Limit(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable identifier of the error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Empty(_) => "E_EMPTY",
            Error::Depth { .. } => "E_DEPTH",
            Error::Dim(_) => "E_DIM",
            Error::Sig(_) => "E_SIG",
            Error::Map(_) => "E_MAP",
            Error::NotFinitelyGenerated => "E_NOT_FG",
            Error::Congruence(_) => "E_CONG",
            Error::Var(_) => "E_VAR",
            Error::Canon(_) => "E_CANON",
            Error::Concurrency(_) => "E_CONC",
            Error::CheckId(_) => "E_CHECK_ID",
            Error::Symbol(_) => "E_SYMBOL",
            Error::Limit(_) => "E_LIMIT",
            Error::Invalid(_) => "E_INVALID",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
