use thiserror::Error;

use crate::point::Point;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("branches {0} and {1} are equal; their intersection is infinite")]
    EqualBranches(String, String),
    #[error("branch {0} is a member of the exclusion set")]
    BranchInSet(String),
    #[error("point {0} is not valid in the {1} ambient space")]
    InvalidPoint(String, &'static str),
    #[error("position {0} already carries a finite value")]
    PositionInSupport(u64),
    #[error("no valid approximating sequence at position {position} for {point}")]
    NoValidApproximation { point: String, position: u64 },
    #[error("registry error: {0}")]
    Registry(String),
    #[error("insufficient registry: need {needed} entries, have {have}")]
    InsufficientRegistry { needed: usize, have: usize },
    #[error("sets are not disjoint: {0}")]
    NotDisjoint(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("set expression {0} is not syntactically closed")]
    NotClosed(String),
    #[error("resource cap exceeded: {what} = {requested} > {cap}")]
    ResourceCap {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
    #[error("hypothesis not certifiable within truncation: {0}")]
    HypothesisNotCertified(String),
    #[error("failure certificate {index} does not hold: counterexample {point}")]
    FailureInvalid { index: usize, point: Point },
    #[error("undecided: {0}")]
    Unknown(String),
    #[error("certificate rejected: {0}")]
    Rejected(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
