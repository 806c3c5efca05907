use thiserror::Error;

/// Errors shared by every solver in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph contains a directed cycle; use the loopy solver")]
    CyclicGraph,

    #[error("state space exceeds bound of {bound} states")]
    StateBound { bound: usize },

    #[error("pile size {pile} exceeds solver limit {limit}")]
    PileLimit { pile: u64, limit: u64 },

    #[error("move cap of {cap} exceeded")]
    MoveCap { cap: u64 },

    #[error("board has {cells} cells, exceeding bound of {bound}")]
    CellBound { cells: usize, bound: usize },
}

impl Error {
    /// True for errors caused by a resource bound rather than bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::StateBound { .. }
                | Error::PileLimit { .. }
                | Error::MoveCap { .. }
                | Error::CellBound { .. }
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
