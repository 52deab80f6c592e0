use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("label given for unknown node `{0}`")]
    UnknownNode(String),

    #[error("node `{0}` has no label")]
    MissingLabel(String),

    #[error("graph has no labels")]
    Unlabeled,

    #[error("graph is empty")]
    EmptyGraph,

    #[error("filter removed every node")]
    AllNodesExcluded,

    #[error("graph is not connected ({components} components); rerun on the largest component")]
    Disconnected { components: usize },

    #[error("node {node} is isolated; the Laplacian needs delta > 0")]
    IsolatedNode { node: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("requested {requested} eigenpairs of a {n}x{n} matrix")]
    TooManyEigenpairs { requested: usize, n: usize },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("leading eigenvalue lambda_{index} is zero")]
    ZeroEigenvalue { index: usize },

    #[error("leading eigenvector vanishes at node {node}; cannot form ratios")]
    VanishingLeadingEntry { node: usize },

    #[error("{0} clusters requested for {1} points")]
    TooManyClusters(usize, usize),

    #[error("label vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
