use thiserror::Error;

use crate::algebra::{Kind, SortName};

/// Crate-wide error type.
///
/// Structural errors describe malformed inputs (bad labels, out-of-range
/// tables, unparseable documents); limit errors report a configured cap that
/// the requested computation would blow through; precondition errors mean the
/// input is well-formed but lacks a property the operation requires (for
/// example an axiom that must hold before a construction applies).
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{label}` in sort {sort}")]
    DuplicateLabel { sort: SortName, label: String },

    #[error("empty label in sort {sort}")]
    EmptyLabel { sort: SortName },

    #[error("sort {sort} must be nonempty")]
    EmptySort { sort: SortName },

    #[error("table entry at row {row}, column {col} is out of range: {value} >= {len}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        len: usize,
    },

    #[error("unknown label `{label}` in sort {sort}")]
    UnknownLabel { sort: SortName, label: String },

    #[error("kind mismatch: expected {expected}, got {got}")]
    KindMismatch { expected: Kind, got: Kind },

    #[error("duplicate atom `{0}` in universe")]
    DuplicateAtom(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("labels `{a}` and `{b}` in sort {sort} carry identical set data")]
    NonInjective { sort: SortName, a: String, b: String },

    #[error("up-set of `{0}` is not contained in its down-set (representation is not marked prime)")]
    UpNotInDown(String),

    #[error("representation labels do not match the algebra: {0}")]
    LabelMismatch(String),

    #[error("limit exceeded: {what} is {size}, cap is {cap}")]
    LimitExceeded {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("document error: {0}")]
    Document(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
