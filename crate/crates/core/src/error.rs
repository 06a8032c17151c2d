use thiserror::Error;

/// Every fallible operation in the crate returns this error.
///
/// Variants map onto the CLI exit codes: usage errors exit with 2,
/// validation-style failures with 3 and resource caps with 4 (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input data: bad vertex ids, duplicate positions, bad JSON.
    #[error("validation error: {0}")]
    Validation(String),

    /// An operation was called outside its documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A numeric parameter lies outside its domain.
    #[error("domain error: {param}: {reason}")]
    Domain { param: &'static str, reason: String },

    /// A degree sequence with odd total.
    #[error("parity error: degree sum {0} is odd")]
    Parity(u64),

    /// An exact computation would exceed its configured cap.
    #[error("resource cap exceeded: {what} ({detail})")]
    ResourceCap { what: &'static str, detail: String },

    /// An iterative method did not converge.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    /// A rigidity answer cannot be given because enumeration was truncated.
    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("parse error at {locus}: {reason}")]
    Parse { locus: String, reason: String },

    #[error("io error: {0}")]
    Io(String),

    /// A bad experiment name, cap name or parameter.
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceCap { .. } | Error::Indeterminate(_) | Error::Convergence { .. } => 4,
            Error::Io(_) => 1,
            Error::Usage(_) => 2,
            _ => 3,
        }
    }

    /// Short snake-case name of the variant, used in CSV status cells.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::Precondition(_) => "precondition",
            Error::Domain { .. } => "domain",
            Error::Parity(_) => "parity",
            Error::ResourceCap { .. } => "resource_cap",
            Error::Convergence { .. } => "convergence",
            Error::Indeterminate(_) => "indeterminate",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
            Error::Usage(_) => "usage",
        }
    }

    pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { param, reason: reason.into() }
    }

    pub(crate) fn cap(what: &'static str, detail: impl Into<String>) -> Self {
        Error::ResourceCap { what, detail: detail.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
