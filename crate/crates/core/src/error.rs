use thiserror::Error;

use crate::model::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("domain '{0}' has zero length")]
    ZeroLengthDomain(String),
    #[error("invalid domain name '{0}'")]
    BadDomainName(String),
    #[error("strand has no domains")]
    EmptyStrand,
    #[error("split produced {0} components; a single move can create at most two")]
    TooManyComponents(usize),
    #[error("invalid complex: {0}")]
    Invalid(Violation),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KineticsError {
    #[error("length must be positive, got {0}")]
    NonPositiveLength(f64),
    #[error("stem count must be at least 1")]
    NoStems,
    #[error("rate constant {0} is not a positive finite number")]
    NotFinite(f64),
}

/// Failures of the condensation step.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CondenseError {
    #[error("reaction {reaction} is {reason}")]
    Restriction { reaction: usize, reason: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Input parsing failure with a 1-based line (and column when known).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
pub struct InputError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("initial complex '{name}' is invalid: {violation}")]
    InvalidInitial { name: String, violation: Violation },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("rate constant: {0}")]
    Kinetics(#[from] KineticsError),
}
