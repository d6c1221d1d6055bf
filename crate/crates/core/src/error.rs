use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed braid word: {0}")]
    MalformedWord(String),
    #[error("letter {letter} does not fit on {strands} strands")]
    StrandOutOfRange { letter: i32, strands: usize },
    #[error("index {index} out of range for length {len}")]
    IndexError { index: usize, len: usize },
    #[error("no braid relation applies at position {0}")]
    RelationNotApplicable(usize),
    #[error("malformed grid: {0}")]
    MalformedGrid(String),
    #[error("cannot render {kind} from {source_kind}")]
    UnsupportedRender { kind: String, source_kind: String },
    #[error("crossing {0} is in state 1 at this vertex; no surgery arc")]
    NoArcAtSite(usize),
    #[error("vertex {vertex:b} is not the root of a square on crossings {c1}, {c2}")]
    NotASquareRoot { vertex: u64, c1: usize, c2: usize },
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("letter at index {0} is not a positive crossing")]
    NotPositiveCrossing(usize),
    #[error("braid has {crossings} crossings, limit is {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
