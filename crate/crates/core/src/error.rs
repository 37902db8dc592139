use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("points must be pairwise distinct: vertices {0} and {1} coincide")]
    DuplicatePoint(usize, usize),

    #[error("expected at least {expected} points, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("vertices do not form a simple polygon in the given order")]
    NotSimple,

    #[error("unsupported Pell parameters x^2 - {d}*y^2 = {n}")]
    UnsupportedPell { d: i64, n: i64 },

    #[error("Pell solutions have different D ({0} vs {1})")]
    MismatchedD(i64, i64),

    #[error("composition degenerates to a solution with a zero component: ({x}, {y})")]
    DegenerateComposition { x: BigInt, y: BigInt },

    #[error("no triangle family registered for k = {0} (supported: 3, 4)")]
    UnsupportedFamily(u64),

    #[error("b = {b} is not admissible for k = {k}: radicand {radicand} is not a perfect square")]
    Inadmissible { k: u64, b: BigInt, radicand: BigInt },

    #[error("Pell solution x^2 - {d}*y^2 = {n} does not feed the k = {k} family")]
    FamilyMismatch { k: u64, d: i64, n: i64 },

    #[error("unknown parity case `{0}`")]
    UnknownCase(String),

    #[error("unknown apex source `{0}`")]
    UnknownSource(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("cannot read {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Format(String),
}
