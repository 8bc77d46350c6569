use thiserror::Error;

/// Errors produced by space construction, validation and synthesis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point index {index} out of range for space of {count} points")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("distance matrix is not symmetric at ({i},{j})")]
    AsymmetricMatrix { i: usize, j: usize },

    #[error("dist[{i}][{j}] violates identity of indiscernibles")]
    BadDiagonal { i: usize, j: usize },

    #[error("triangle inequality violated for ({i},{j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },

    #[error("neighborhood graph is not connected (declared connected)")]
    Disconnected,

    #[error("degenerate space: diameter is zero")]
    DegenerateSpace,

    #[error("resolution must be positive")]
    BadResolution,

    #[error("empty space")]
    EmptySpace,

    #[error("index set must contain at least two strictly increasing values")]
    BadIndexSet,

    #[error("filtration has {sets} sets for {indices} index values")]
    SetCountMismatch { sets: usize, indices: usize },

    #[error("first set must be empty and last set must be the full space")]
    EndpointSets,

    #[error("grid cell {0:?} missing from n-dimensional filtration")]
    MissingGridCell(Vec<usize>),

    #[error("filtration is not nested: {0} violation(s)")]
    NotNested(usize),

    #[error("filtration is not stable: {0} violation(s)")]
    NotStable(usize),

    #[error("filtration is not complete: {0} violation(s)")]
    NotComplete(usize),

    #[error("resolution too coarse for point {point}: both anchor distances vanished with alpha < beta")]
    ResolutionDegeneracy { point: usize },

    #[error("no point may have alpha = i_min and beta = i_max in a proper stable filtration (point {point})")]
    AlphaBetaRange { point: usize },

    #[error("function dimension {got} does not match expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("function defined on {got} points, space has {expected}")]
    SpaceMismatch { got: usize, expected: usize },

    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),

    #[error("persistence diagrams have different degrees ({0} vs {1})")]
    DegreeMismatch(u8, u8),

    #[error("fixture parameter out of range: {0}")]
    BadFixtureParameter(String),

    #[error("fixture integrity: {0}")]
    FixtureIntegrity(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
