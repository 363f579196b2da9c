use thiserror::Error;

use crate::triangulation::Violation;
use crate::walker::NodeState;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table size {requested} exceeds the configured cap {cap} (raise the cap explicitly)")]
    TableTooLarge { requested: usize, cap: usize },

    #[error("index ({n}, {m}) outside the table (need 0 <= m <= n <= {n_max})")]
    IndexOutOfRange { n: usize, m: usize, n_max: usize },

    #[error("ballot number N({i}, {j}) is undefined (need -1 <= j <= i)")]
    BallotDomain { i: usize, j: i64 },

    #[error("invalid node state ({n}, {m}): need m <= n")]
    InvalidState { n: usize, m: usize },

    #[error("node {0} has no {1} child")]
    NoChild(NodeState, &'static str),

    #[error("empty structure class: a[{}][{}] = 0", .0.n, .0.m)]
    EmptyClass(NodeState),

    #[error("code {code} out of range for a root with {count} leaves")]
    CodeOutOfRange { code: String, count: String },

    #[error("invalid branch path at step {index}: {reason}")]
    InvalidPath { index: usize, reason: String },

    #[error("codeword has {actual} bits, expected {expected}")]
    CodeWidth { expected: u64, actual: u64 },

    #[error("invalid bit string: {0}")]
    BadBits(String),

    #[error("replay bit source exhausted after {consumed} bits")]
    BitSourceExhausted { consumed: u64 },

    #[error("polygon needs at least 3 vertices, got {0}")]
    PolygonTooSmall(usize),

    #[error("{missing} forbidden ears exceed the {vertices} available")]
    TooManyForbidden { vertices: usize, missing: usize },

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(Violation),

    #[error("invalid Dyck word at position {position}: {reason}")]
    InvalidDyck { position: usize, reason: String },

    #[error("oracle guard: size {size} outside [{min}, {max}]")]
    OracleGuard { size: usize, min: usize, max: usize },

    #[error("table import: {0}")]
    Import(String),
}
