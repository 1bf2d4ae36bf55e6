use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown node {0:?}")]
    UnknownNode(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid demand for {vertex:?}: {reason}")]
    InvalidDemand { vertex: String, reason: String },

    #[error("set {0:?} is not independent in the conflict graph")]
    NotIndependent(Vec<String>),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid horizon {0}: must be positive")]
    InvalidHorizon(Rational),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("{resource} limit exceeded: {actual} > {limit}")]
    ResourceLimit {
        resource: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("{0}")]
    ConditionFailed(Box<ConditionFailure>),

    #[error("internal error: {0}")]
    Internal(String),
}

/// First failing row of an admission test.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("condition {condition} fails at {subject} (lhs {lhs} > {bound})")]
pub struct ConditionFailure {
    pub condition: String,
    pub subject: String,
    pub lhs: Rational,
    pub bound: Rational,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
