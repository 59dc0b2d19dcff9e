use thiserror::Error;

use crate::triangle::Coord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{len}: {word:?}")]
    InvalidPermutation { word: Vec<usize>, len: usize },

    #[error("not a partition (parts must be weakly decreasing): {parts:?}")]
    InvalidPartition { parts: Vec<i64> },

    #[error("box ({row},{col}) lies outside a diagram with {rows} rows")]
    BoxOutOfRange { row: usize, col: usize, rows: usize },

    #[error("diagram is not column-convex: column {column} occupies rows {rows:?}")]
    NotColumnConvex { column: usize, rows: Vec<usize> },

    #[error("permutation contains pattern {pattern} at positions {positions:?}")]
    PatternContained {
        pattern: &'static str,
        positions: [usize; 4],
    },

    #[error("family entry {index} must have exactly {index} parts, got {got}")]
    FamilyShape { index: usize, got: usize },

    #[error("diagram has boxes in the first row")]
    FirstRowBoxes,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("coordinate x_{{{},{}}} outside a triangle of size {size}", .coord.row, .coord.col)]
    CoordOutOfRange { coord: Coord, size: usize },

    #[error("no finite {side} bound derivable for x_{{{},{}}}", .coord.row, .coord.col)]
    Unbounded { coord: Coord, side: &'static str },

    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },

    #[error("arity {arity} is not a triangular number")]
    NotTriangular { arity: usize },

    #[error("point violates the defining constraints: {reason}")]
    NotInPolytope { reason: String },

    #[error("fiber over row {row} is not a coordinate box")]
    FiberNotBox { row: usize },

    #[error("fixed coordinates must cover every row except {row}")]
    IncompleteFiber { row: usize },

    #[error("flow network contains a cycle")]
    CyclicNetwork,

    #[error("edge ({from},{to}) references a missing vertex")]
    DanglingEdge { from: usize, to: usize },

    #[error("netflows sum to {sum}, expected 0")]
    UnbalancedNetflow { sum: i64 },

    #[error("invalid flow: {reason}")]
    InvalidFlow { reason: String },

    #[error("expected at most one source and one sink, found {sources} sources and {sinks} sinks")]
    NotSingleCommodity { sources: usize, sinks: usize },

    #[error("invalid parameters: {reason}")]
    InvalidParameters { reason: String },

    #[error("cannot parse {what} from {token:?}")]
    Parse { what: &'static str, token: String },
}

pub type Result<T> = std::result::Result<T, Error>;
