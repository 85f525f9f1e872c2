use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("hyperedge {index} is empty")]
    EmptyHyperedge { index: usize },
    #[error("hyperedge {index} is not strictly ascending")]
    UnsortedHyperedge { index: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("coloring has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color {color} of vertex {vertex} is outside the palette of size {palette}")]
    ColorOutOfPalette { vertex: usize, color: usize, palette: usize },
    #[error("invalid shape {index}: {reason}")]
    InvalidShape { index: usize, reason: String },
    #[error("general position violated by shapes {a} and {b}: {reason}")]
    GeneralPosition { a: usize, b: usize, reason: String },
    #[error("shape {index} does not cross the line")]
    NotCrossingLine { index: usize },
    #[error("partition condition violated by curves {a} and {b}: {reason}")]
    Partition { a: usize, b: usize, reason: String },
    #[error("classes are not a proper coloring: strings {a} and {b} intersect")]
    ImproperClasses { a: usize, b: usize },
    #[error("round {round}: weak colorer output is not {required}-weak")]
    NotWeak { round: usize, required: usize },
    #[error("resample budget of {budget} exceeded")]
    ResampleBudget { budget: u64 },
    #[error("search cap of {cap} nodes exceeded")]
    SearchCap { cap: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
