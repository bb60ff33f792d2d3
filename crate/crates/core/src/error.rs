use thiserror::Error;

use crate::tableau::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("{0:?} is not a corner")]
    NotACorner(Cell),
    #[error("inconsistent triple")]
    InconsistentTriple,
    #[error("unrecoverable pair")]
    UnrecoverablePair,
    #[error("inconsistent square: {0}")]
    InconsistentSquare(String),
    #[error("invalid corner set: {0}")]
    InvalidCorners(String),
    #[error("no letter 1 in the top-left box")]
    NoLetterOne,
    #[error("not a stack polyomino")]
    NotStack,
    #[error("nothing to move: shape is already a Ferrers shape")]
    NothingToMove,
    #[error("invalid filling: {0}")]
    InvalidFilling(String),
    #[error("phi inconsistency: {0}")]
    PhiInconsistency(String),
    #[error("invalid linked partition: {0}")]
    InvalidLinkedPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
