use std::fmt;

/// Errors produced by instance handling, spanner construction and verification.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate point at indices {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("invalid radius {radius} at index {index}")]
    InvalidRadius { index: usize, radius: f64 },
    #[error("instance is empty")]
    EmptyInstance,
    #[error("epsilon must be 1/2^m with m >= 1, got {0}")]
    InvalidEpsilon(String),
    #[error("direction is degenerate (apex equals target)")]
    DegenerateDirection,
    #[error("keys are equal")]
    EqualKeys,
    #[error("points {0} and {1} quantize to the same Morton key")]
    QuantizationCollision(usize, usize),
    #[error("coordinate extent needs {0} quadtree levels above the epsilon grid; at most 31 are available")]
    ExtentTooLarge(u32),
    #[error("instance does not have unit radii (index {0})")]
    NotUnitInstance(usize),
    #[error("radius {0} exceeds 1; instance is not normalized")]
    NotNormalized(f64),
    #[error("shift ({alpha}, {beta}) is outside the legal range")]
    InvalidShift { alpha: i64, beta: i64 },
    #[error("edge ({0}, {1}) is within close range of its root")]
    NotFarEdge(usize, usize),
    #[error("set is empty")]
    EmptySet,
    #[error("graph has {0} vertices, over the oracle cap of {1}")]
    OracleTooLarge(usize, usize),
    #[error("spanner edge ({0}, {1}) is not an edge of the graph")]
    NotSubgraph(usize, usize),
    #[error("fewer than two distinct coordinates along the axis")]
    DegenerateAxis,
    #[error("separator invariant violated: {0}")]
    SeparatorInvariantViolation(Witness),
    #[error("boundary weight ({0}, {1}) requested before its parent computed it")]
    InductionOrderViolation(usize, usize),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

/// Concrete evidence attached to a separator invariant violation.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    CrossEdge { node: usize, u: usize, v: usize },
    Unbalanced { node: usize, child: usize, size: usize, limit: f64 },
    OversizedLeaf { node: usize, size: usize },
    SeparatorNotSubset { node: usize, vertex: usize },
    LongEdge { u: usize, v: usize, depth_tag: i32, length: f64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::CrossEdge { node, u, v } => {
                write!(f, "node {node}: edge ({u}, {v}) joins the two parts")
            }
            Witness::Unbalanced { node, child, size, limit } => {
                write!(f, "node {node}: child {child} has {size} vertices, limit {limit}")
            }
            Witness::OversizedLeaf { node, size } => write!(f, "leaf {node} has {size} vertices"),
            Witness::SeparatorNotSubset { node, vertex } => {
                write!(f, "node {node}: separator vertex {vertex} not in V(t)")
            }
            Witness::LongEdge { u, v, depth_tag, length } => {
                write!(f, "edge ({u}, {v}) with depth tag {depth_tag} has length {length}")
            }
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
