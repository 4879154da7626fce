//! Error type shared by all operations of the crate.

use thiserror::Error;

/// Errors raised by construction and evaluation of structures, systems,
/// derived predicates, witness searches, and poset analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown predicate symbol `{0}`")]
    UnknownSymbol(String),
    #[error("arity mismatch for `{symbol}`: expected {expected} arguments, got {got}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("element `{0}` is not in the universe")]
    UnknownElement(String),
    #[error("element id {0} is out of range for this universe")]
    ElementOutOfRange(usize),
    #[error("variable `{0}` is not assigned")]
    UnassignedVariable(String),
    #[error("variable `{0}` is not declared in the system")]
    UndeclaredVariable(String),
    #[error("the two systems do not share a variable set")]
    VariableSetMismatch,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("exact minimization is capped at 20 equations (got {0}); use greedy mode")]
    ExactMinimizeTooLarge(usize),
    #[error("invalid projection: {0}")]
    InvalidProjection(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("invalid depth: {0}")]
    InvalidDepth(String),
    #[error("invalid scan caps: {0}")]
    InvalidCaps(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("witness failed verification")]
    UnverifiedWitness,
    #[error("witness does not match the derived-predicate spec: {0}")]
    SpecMismatch(String),
    #[error("order axiom violated: {0}")]
    OrderViolation(String),
    #[error("graph tag violated: {0}")]
    GraphTagViolation(String),
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
