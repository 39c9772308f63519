use thiserror::Error;

/// Everything that can go wrong while reading a diagram or running an analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: duplicate edge {i}-{j}")]
    DuplicateEdge { line: usize, i: usize, j: usize },

    #[error("line {line}: invalid label {label} (must be an integer >= {min} or `inf`)")]
    InvalidLabel { line: usize, label: String, min: u32 },

    #[error("line {line}: vertex {vertex} out of range 1..={rank}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        rank: usize,
    },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram is disconnected ({components} components); direct products are not supported")]
    Disconnected { components: usize },

    #[error("diagram of rank {rank} is too small (need at least {needed})")]
    RankTooSmall { rank: usize, needed: usize },

    #[error("vertices {i} and {j} are not joined by an infinity edge")]
    NotInfinityEdge { i: usize, j: usize },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("resource cap exceeded: {what} reached {value} (cap {cap})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("matrix is not irreducible ({components} strongly connected components)")]
    NotStronglyConnected { components: usize },

    #[error("zero matrix has no Perron root")]
    ZeroMatrix,

    #[error("empty alphabet")]
    EmptyAlphabet,

    #[error("missing certificate: {0}")]
    MissingCertificate(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
