use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HbError {
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("arity error: expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid Hessenberg function {h}: {reason}")]
    InvalidHessFn { h: String, reason: String },
    #[error("not a lower ideal: {0}")]
    NotLowerIdeal(String),
    #[error("not Artinian: generators are not a regular sequence")]
    NotArtinian,
    #[error("variable-count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("degree of the zero polynomial is undefined")]
    DegreeOfZero,
    #[error("generic variant defined only for the flag case")]
    NotFlag,
    #[error("inclusion error: {sub} is not contained in {sup}")]
    Inclusion { sub: String, sup: String },
    #[error("presentation inconsistency: {0}")]
    IllDefinedMap(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("rank exceeds desk-scale ceiling: {0}")]
    CeilingExceeded(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, HbError>;
