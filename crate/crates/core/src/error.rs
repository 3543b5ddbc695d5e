use thiserror::Error;

use crate::trees::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} is not in the tree")]
    UnknownVertex(Vertex),
    #[error("vertex labels must be positive, got 0")]
    ZeroLabel,
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("tree is not increasing: father of {vertex} is {father}")]
    NotIncreasing { vertex: Vertex, father: Vertex },
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("vertex sets overlap at {0}")]
    Overlap(Vertex),
    #[error("splicing vertices must satisfy v1 > v2, got v1 = {v1}, v2 = {v2}")]
    SpliceOrder { v1: Vertex, v2: Vertex },
    #[error("invalid split: decomposition part rooted at {root} straddles the given vertex set")]
    InvalidSplit { root: Vertex },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("set is not a union of blocks: block {block:?} is cut")]
    NotCompatible { block: Vec<Vertex> },
    #[error("{{1}} must be a singleton block")]
    MissingSingletonOne,
    #[error("need at least {need} blocks, got {got}")]
    TooFewBlocks { need: usize, got: usize },
    #[error("dominating function violated at {at}: {reason}")]
    NotDominating { at: Vertex, reason: String },
    #[error("c_{index} = {value} is out of range 1..={max}")]
    CodeOutOfRange {
        index: usize,
        value: Vertex,
        max: Vertex,
    },
    #[error("code has length {got}, expected {expected}")]
    CodeLength { expected: usize, got: usize },
    #[error("block {block:?} is not a subchain of the tree")]
    NotSubchain { block: Vec<Vertex> },
    #[error("tree vertex set does not match the partition ground set")]
    GroundSetMismatch,
    #[error("variable {0} has no value in the assignment")]
    MissingVariable(String),
    #[error("negative falling factorial order {0}")]
    NegativeOrder(i64),
    #[error("size {got} is out of range {min}..={max}")]
    SizeOutOfRange { got: usize, min: usize, max: usize },
    #[error("json: {0}")]
    Json(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
