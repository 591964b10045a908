use thiserror::Error;

use crate::exactmath::Field;
use crate::groups::Degree;

/// Errors for malformed input and violated preconditions.
///
/// Verification failures are not errors: they come back as a failing
/// [`Report`](crate::report::Report).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("invalid scalar {0:?}")]
    InvalidScalar(String),
    #[error("expected {expected} entries for a {rows}x{cols} matrix, found {found}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("degree {0} is not an element of the group")]
    DegreeOutOfRange(Degree),
    #[error("structures are graded by different groups")]
    GroupMismatch,
    #[error("support {support:?} does not fit in the window [{lo}, {hi}]")]
    WindowTooSmall { lo: i64, hi: i64, support: (i64, i64) },
    #[error("{what} has shape {found:?}, expected {expected:?}")]
    Shape {
        what: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("missing component {0}")]
    MissingComponent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vector is not in the computed kernel: {0}")]
    NotInKernel(String),
    #[error("roster incomplete: {0}")]
    RosterIncomplete(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}: {context}: {message}")]
    Invalid {
        file: String,
        context: String,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
