use thiserror::Error;

use crate::instance::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),

    #[error("unknown edge id {0}")]
    UnknownEdgeId(usize),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("{what} = {actual} exceeds the enumeration limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("an edge order (sigma_e) is required")]
    MissingEdgeOrder,

    #[error("malformed path: {0}")]
    MalformedPath(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hyperedge {group} has weight ratio {ratio} outside the band [{alpha1}, {alpha2}]")]
    AlphaBand {
        group: String,
        ratio: f64,
        alpha1: f64,
        alpha2: f64,
    },

    #[error("malformed instance file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
