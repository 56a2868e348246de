use std::fmt;

/// Errors raised by the library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two values do not share the same length or alphabet, or an index is out of range.
    Shape(String),
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// An exhaustive enumeration would exceed its budget.
    Resource {
        what: String,
        needed: u128,
        budget: u128,
    },
    /// Malformed textual input (code files, configs, rationals).
    Parse(String),
    /// Two independent computations disagreed.
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn over_budget(what: impl Into<String>, needed: u128, budget: u128) -> Self {
        Error::Resource {
            what: what.into(),
            needed,
            budget,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(m) => write!(f, "shape error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Resource {
                what,
                needed,
                budget,
            } => write!(
                f,
                "resource error: {what} needs {needed} steps, budget is {budget}"
            ),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Inconsistent(m) => write!(f, "inconsistent results: {m}"),
        }
    }
}

impl std::error::Error for Error {}
