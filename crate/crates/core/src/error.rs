use thiserror::Error;

/// Structural defect in a rotation system.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("graph needs at least two vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex {vertex} lists neighbor {neighbor}, outside 1..={n}")]
    NeighborOutOfRange {
        vertex: usize,
        neighbor: usize,
        n: usize,
    },
    #[error("vertex {0} lists itself as a neighbor")]
    SelfLoop(usize),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("asymmetric adjacency: {0} lists {1} but not vice versa")]
    Asymmetric(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system is not planar: V - E + F = {0}")]
    NotPlanar(i64),
}

/// Where in an input stream an error was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Byte(u64),
    Line(usize),
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Position::Byte(b) => write!(f, "byte {b}"),
            Position::Line(l) => write!(f, "line {l}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseErrorKind {
    #[error("missing or malformed `>>planar_code<<` header")]
    BadHeader,
    #[error("record truncated")]
    Truncated,
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate line for vertex {0}")]
    DuplicateVertex(usize),
    #[error("missing line for vertex {0}")]
    MissingVertex(usize),
    #[error(transparent)]
    Invalid(#[from] EmbeddingError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// An input error, located by graph index (0-based, stream order) and position.
#[derive(Debug, Error)]
#[error("graph {graph_index} at {position}: {kind}")]
pub struct ParseError {
    pub graph_index: usize,
    pub position: Position,
    pub kind: ParseErrorKind,
}

impl ParseError {
    /// Whether the reader can continue with the next record after this error.
    pub fn is_recoverable(&self) -> bool {
        matches!(
            self.kind,
            ParseErrorKind::Invalid(_)
                | ParseErrorKind::DuplicateVertex(_)
                | ParseErrorKind::MissingVertex(_)
                | ParseErrorKind::Syntax(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    #[error("graph with {0} vertices exceeds the 16-bit planar_code range")]
    TooManyVertices(usize),
}

/// Census identities are theorems for embedded graphs, so a violation means corrupt data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("expected a 4-regular graph, got degree {0}")]
    NotFourRegular(usize),
    #[error("outer face size {0} is below 5")]
    OuterFaceTooSmall(usize),
    #[error("census identity `{0}` failed")]
    IdentityFailed(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("polygon needs at least 3 sides, got {0}")]
    TooFewSides(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint {row} references variable {variable}, model has {width}")]
    RowWidth {
        row: usize,
        variable: usize,
        width: usize,
    },
    #[error("objective variable {0} out of range")]
    ObjectiveOutOfRange(usize),
    #[error("certificate failed verification: {0}")]
    Certificate(&'static str),
}
