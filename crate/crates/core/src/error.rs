use crate::solve::SolveTrace;

/// Errors reported by graph construction, checkers, solvers, and parsers.
///
/// `FlipBudgetExhausted` and `Internal` indicate broken invariants rather
/// than bad input; the CLI maps them to a distinct exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {index} out of range for a graph with {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("duplicate condition entry for `{0}`")]
    DuplicateCondition(String),
    #[error("threshold must be at least 1")]
    ZeroThreshold,
    #[error("partition covers {got} vertices, graph has {want}")]
    PartitionSize { got: usize, want: usize },
    #[error("no side assigned to `{0}`")]
    PartitionIncomplete(String),
    #[error("partial partitions overlap at vertex index {0}")]
    OverlappingDomain(usize),
    #[error("vertex `{0}` carries an infinite condition; finitize first")]
    InfiniteCondition(String),
    #[error("vertex `{0}` is excluded by the supplied set")]
    ExcludedVertex(String),
    #[error("layer contains already-settled vertex `{0}`")]
    LayerOverlap(String),
    #[error("brute force is capped at {cap} vertices, got {got}")]
    BruteForceSize { got: usize, cap: usize },
    #[error("not a gadget graph: {0}")]
    MalformedGadget(String),
    #[error("unsatisfiable generator parameters: {0}")]
    Unsatisfiable(String),
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
    #[error("flip budget {budget} exhausted without convergence")]
    FlipBudgetExhausted { budget: u64, trace: Box<SolveTrace> },
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl std::fmt::Display) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.to_string(),
        }
    }

    /// True for errors that signal a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::FlipBudgetExhausted { .. } | Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
