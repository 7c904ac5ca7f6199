use thiserror::Error;

use crate::driver::GenerationStats;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree at position {index} is negative ({value})")]
    InvalidDegree { index: usize, value: i64 },

    #[error("degree sum {0} is odd")]
    OddDegreeSum(u64),

    #[error("degree sequence is not graphical")]
    NotGraphical,

    #[error("bipartite degree sequence is not bigraphical")]
    NotBigraphical,

    #[error("part degree sums differ: X sums to {x_sum}, Y sums to {y_sum}")]
    UnbalancedParts { x_sum: u64, y_sum: u64 },

    #[error("gave up after {} restarts", .0.total_restarts())]
    GaveUp(Box<GenerationStats>),

    #[error("lower bound {lower} exceeds extension count {count}")]
    BoundViolation { lower: u64, count: u64 },

    #[error("anchor is not valid on this graph: {0}")]
    InvalidAnchor(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("oracle limited to {limit} vertices, got {n}")]
    TooLargeForOracle { n: usize, limit: usize },

    #[error("expected count per cell is {expected:.3}, need at least {required}")]
    InsufficientSamples { expected: f64, required: f64 },
}
