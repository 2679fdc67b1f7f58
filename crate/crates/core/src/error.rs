//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by constructors, generators, and the lemma procedures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("edge {index} has {found} distinct vertices, expected {expected}")]
    BadArity {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("edge {second} duplicates edge {first}")]
    DuplicateEdge { first: usize, second: usize },

    #[error("linearity violation: vertices {u} and {v} lie together in edges {first} and {second}")]
    LinearityViolation {
        u: u32,
        v: u32,
        first: usize,
        second: usize,
    },

    #[error("vertex {0} out of range (id bound {1})")]
    VertexOutOfRange(u32, usize),

    #[error("unknown vertex {0}")]
    UnknownVertex(u32),

    #[error("graph has no r-partition attached")]
    NoPartition,

    #[error("bad partition: {0}")]
    BadPartition(String),

    #[error("f-value undefined on a graph with no vertices")]
    EmptyGraph,

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("edge budget {budget} infeasible: {rejections} consecutive rejections after {accepted} accepted edges")]
    BudgetInfeasible {
        budget: usize,
        accepted: usize,
        rejections: usize,
    },

    #[error("oracle size guard: graph has {vertices} vertices, cap is {cap}")]
    SizeGuard { vertices: usize, cap: usize },

    #[error("colouring not strongly proper: edges {first} and {second} share a vertex and a colour")]
    NotStronglyProper { first: usize, second: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("density precondition failed: e = {edges} < {required:.3}")]
    DensityPrecondition { edges: usize, required: f64 },

    #[error(
        "retries exhausted after {retries} attempts; worst deficit: vertex {vertex} in part {part} has {actual} < floor {floor}"
    )]
    RetriesExhausted {
        retries: usize,
        vertex: u32,
        part: usize,
        actual: usize,
        floor: usize,
    },

    #[error("set {0} is not a vertex cover: set index {1} is uncovered")]
    NotAVertexCover(String, usize),

    #[error("cross-cut stalled after {rounds} rounds: best kept {best} sets, threshold {threshold:.3}")]
    CrossCutStalled {
        rounds: usize,
        best: usize,
        threshold: f64,
    },

    #[error("empty level {level} while growing the tree")]
    EmptyLevel { level: usize },

    #[error("no valid cycle extension: {0}")]
    NoExtension(String),

    #[error("work cap exceeded after {expanded} node expansions (cap {cap})")]
    WorkCapExceeded { expanded: u64, cap: u64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
