use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed user input (bad permutation, unparsable file, ...).
    #[error("input error: {0}")]
    Input(String),
    /// An argument outside the domain of the operation, e.g. `g` not in `G`.
    #[error("domain error: {0}")]
    Domain(String),
    /// A loaded object failed one of its defining relations.
    #[error("validation error ({relation}): {detail}")]
    Validation { relation: String, detail: String },
    /// p-adic valuation problem in a reduction modulo p.
    #[error("valuation error: {0}")]
    Valuation(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// A required upstream object (usually a local character table) is missing.
    #[error("missing dependency: {0}")]
    Dependency(String),
    /// Inconsistent numerical data handed to a pure combinatorial routine.
    #[error("data error: {0}")]
    Data(String),
    #[error("contract violation: {0}")]
    Contract(String),
    /// An internal invariant failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(relation: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Validation { relation: relation.into(), detail: detail.into() }
    }
}
