use thiserror::Error;

use crate::graph::Vertex;
use crate::pattern::PatternWitness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("duplicate vertex id {0}")]
    DuplicateVertex(Vertex),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid branch decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("graph has {n} vertices, exhaustive oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("graph is not in the class: contains induced {}", .0.pattern)]
    NotInClass(PatternWitness),

    #[error("no dominating structure found: {0}")]
    NoDominator(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
