use thiserror::Error;

use crate::picard::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {0} is outside the supported range 3..=8")]
    RankOutOfRange(i64),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u8, right: u8 },
    #[error("a class of rank {rank} needs {} coordinates, got {got}", *rank as usize + 1)]
    CoordinateCount { rank: u8, got: usize },
    #[error("cannot parse class literal {0:?}")]
    Parse(String),
    #[error("{0:?} is not a root")]
    NotARoot(DivisorClass),
    #[error("{0:?} is not a line")]
    NotALine(DivisorClass),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("expected a simplex with {expected} vertices, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("e_r has no strict transform")]
    NoStrictTransform,
    #[error("line map is not an isometry of the line set: {0}")]
    NotAnIsometry(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
