use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),

    #[error("invalid element name `{0}`")]
    InvalidName(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("order relation has a cycle: {}", .0.join(" <= "))]
    CycleDetected(Vec<String>),

    #[error("{what} is {actual}, above the configured cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("not a lattice: `{a}` and `{b}` have no {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: &'static str,
    },

    #[error("empty poset")]
    EmptyPoset,

    #[error("operator is not monotonic: {x} <= {y} but G({x}) does not contain G({y})")]
    NotMonotone { x: String, y: String },

    #[error("fuzzy map is not monotone: {x} <= {y} but mu({x}) > mu({y}) fails")]
    NotMonotoneMap { x: String, y: String },

    #[error("`{0}` is not an up-set")]
    NotAnUpSet(String),

    #[error("family is not closed under intersection: {a} and {b}")]
    NotIntersectionClosed { a: String, b: String },

    #[error("family does not contain the full carrier")]
    MissingFullSet,

    #[error("cut family mismatch: {0}")]
    CutMismatch(String),

    #[error("operators live on different carriers")]
    CarrierMismatch,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("internal disagreement between independent checks: {0}")]
    InternalDisagreement(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn cap(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::CapExceeded {
            what,
            limit,
            actual,
        }
    }

    /// True for the errors that certify a refuted theorem.
    pub fn is_certificate(&self) -> bool {
        matches!(
            self,
            Error::InternalDisagreement(_) | Error::VerificationFailed(_) | Error::CutMismatch(_)
        )
    }
}
