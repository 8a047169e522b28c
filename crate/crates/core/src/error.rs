use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("node id {id} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { id: usize, node_count: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate degree sequence")]
    DegenerateDegreeSequence,

    #[error("graph too small for spectral prefix: {node_count} nodes, {requested} eigenvalues requested")]
    GraphTooSmall { node_count: usize, requested: usize },

    #[error("cascade budget unreachable: {reached} of {budget} edges after {runs} runs")]
    CascadeBudgetUnreachable {
        budget: usize,
        reached: usize,
        runs: usize,
    },

    #[error("training data must contain both classes")]
    SingleClass,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("insufficient rows: class {label} has {count} rows, {folds} folds requested")]
    InsufficientClassRows {
        label: bool,
        count: usize,
        folds: usize,
    },

    #[error("SMO did not converge within {0} pair updates")]
    SmoIterationLimit(usize),

    #[error("feature invariant violated: {0}")]
    FeatureInvariant(String),

    #[error("all {0} experiment cells aborted")]
    AllCellsAborted(usize),

    #[error("parse error in {source_name} line {line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(source_name: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn file(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}
