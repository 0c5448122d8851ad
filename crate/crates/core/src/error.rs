use thiserror::Error;

use crate::groupoid::ValidationReport;

#[derive(Debug, Error)]
pub enum GroupoidError {
    #[error("the unit space is empty")]
    EmptyUnitSpace,
    #[error("duplicate point identifier {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("point index {0} is outside the unit space")]
    PointOutOfRange(usize),
    #[error("arrow {0} is not in the groupoid")]
    ArrowNotInGroupoid(String),
    #[error("arrows {first} and {second} are not composable")]
    NotComposable { first: String, second: String },
    #[error("invalid groupoid ({} violation(s))", .0.violations.len())]
    Invalid(ValidationReport),
}

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("elements live over different groupoids")]
    GroupoidMismatch,
    #[error("arrow {0} is not in the groupoid")]
    ArrowNotInGroupoid(String),
    #[error("the zero element is not a normalizer")]
    ZeroNormalizer,
    #[error("support is not a bisection: {first} and {second} share an endpoint")]
    NotBisection { first: String, second: String },
    #[error("function is not supported on the unit space")]
    NotDiagonal,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate edge name {0:?}")]
    DuplicateEdge(String),
    #[error("edge name {0:?} is empty or contains '.'")]
    BadEdgeName(String),
    #[error("vertex {0:?} reaches no sink")]
    NoSinkReachable(String),
    #[error("graph has a cycle through {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("the point set is empty")]
    Empty,
    #[error("duplicate point identifier {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("map is not a permutation: {0:?} is hit twice")]
    NotBijective(String),
    #[error("map has {got} images for {expected} points")]
    WrongLength { expected: usize, got: usize },
    #[error("malformed cycle notation: {0}")]
    BadCycle(String),
    #[error("elements live over different dynamical systems")]
    SystemMismatch,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("groupoid failed validation: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("serialization failed: {0}")]
    Serialize(String),
}
