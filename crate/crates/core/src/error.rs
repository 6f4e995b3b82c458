use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(u32),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    #[error("edge {{{a}, {b}}} has an endpoint outside 0..{n}")]
    EndpointOutOfRange { a: u32, b: u32, n: usize },
    #[error("unknown graph name `{0}` (expected mk16, k33, gq22 or cycle:<n> with n >= 3)")]
    UnknownBuiltin(String),
    #[error("automorphism group has more than {bound} elements")]
    TooManyAutomorphisms { bound: usize },
    #[error("image array is not a permutation")]
    NotAPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WiredError {
    #[error("wire ({0},{0}) joins an edge-end to itself")]
    DegenerateWire(u32),
    #[error("link vertex {vertex} is outside the arrangement (total {total})")]
    VertexOutOfRange { vertex: u32, total: u32 },
    #[error("corner {{{0}, {1}}} is not an edge of a single link")]
    CornerNotAnEdge(u32, u32),
    #[error("face covers link edge {{{0}, {1}}} more than once")]
    RepeatedCorner(u32, u32),
    #[error("wires ({0},{1}) and ({2},{3}) are incompatible")]
    IncompatibleWires(u32, u32, u32, u32),
    #[error("face {0} is incompatible with the partial complex")]
    IncompatibleFace(String),
    #[error("complex has no faces to remove")]
    Empty,
    #[error("complex is not complete: {uncovered} link edges are uncovered")]
    Incomplete { uncovered: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("pattern {pattern:?} refers to link {link}, but the arrangement has {links} links")]
    BadPattern { pattern: [usize; 3], link: usize, links: usize },
    #[error("seed face {index} rejected: {source}")]
    BadSeed { index: usize, source: WiredError },
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("isomorphism group order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: u128, bound: u128 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("face {face} contains label 0")]
    ZeroLabel { face: usize },
    #[error("label {label} exceeds the edge count {edges}")]
    LabelOutOfRange { label: u32, edges: u32 },
    #[error("label {0} does not occur in any face")]
    UnusedLabel(u32),
    #[error("face {face}: side {side} ends at vertex {end} but the next side starts at {start}")]
    VertexMismatch { face: usize, side: usize, end: u32, start: u32 },
    #[error("face {face}: corner between sides {side} and {next} joins edge-end {label}{end} to itself")]
    CornerLoop { face: usize, side: usize, next: usize, label: u32, end: char },
    #[error("triangle {triangle}: edge {label} would be a loop at vertex {vertex}")]
    LoopLabel { triangle: usize, label: u32, vertex: u32 },
    #[error("edge {label} joins {first:?} in one triangle but {second:?} in another")]
    InconsistentEndpoints { label: u32, first: (u32, u32), second: (u32, u32) },
    #[error("presentation has no vertex assignment")]
    MissingVertices,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError { line, message: message.into() }
    }
}
