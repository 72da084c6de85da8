use thiserror::Error;

use crate::vertex_set::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why an exhaustive search stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbortReason {
    TimeLimit,
    OrderLimit,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order {order}: {reason}")]
    InvalidOrder { order: usize, reason: &'static str },

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("vertex {label} out of range 1..={order}")]
    VertexOutOfRange { label: usize, order: usize },

    #[error("invalid root set: {0}")]
    InvalidRootSet(String),

    #[error("not a zero forcing set: closure stalls at {} of {order} vertices", closure.len())]
    NotForcing { closure: VertexSet, order: usize },

    #[error("search aborted ({reason:?}); Z lies in {lower}..={upper}")]
    SearchAborted {
        reason: AbortReason,
        lower: usize,
        upper: usize,
    },

    #[error("{case}: parameters outside hypothesis: {reason}")]
    OutOfHypothesis { case: String, reason: String },

    #[error("matrix is {rows}x{rows} but graph has {order} vertices")]
    ShapeMismatch { rows: usize, order: usize },

    #[error("matrix does not realize the zero-nonzero pattern of the graph")]
    InvalidWitness,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn out_of_hypothesis(case: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::OutOfHypothesis {
            case: case.into(),
            reason: reason.into(),
        }
    }
}
