use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("form entry ({0},{1}) violates the degree constraint ã + b̃ = {2}")]
    DegreeViolation(usize, usize, i64),
    #[error("form entries ({0},{1}) and ({1},{0}) conflict with graded symmetry")]
    SymmetryConflict(usize, usize),
    #[error("multiplication {0}·{1} does not respect the grading")]
    GradingViolation(usize, usize),
    #[error("associativity fails on basis triple ({0},{1},{2})")]
    Associativity(usize, usize, usize),
    #[error("invariance (ab,c) = (a,bc) fails on basis triple ({0},{1},{2})")]
    Invariance(usize, usize, usize),
    #[error("the bilinear form is degenerate")]
    DegenerateForm,
    #[error("elements live over different ground spaces")]
    MismatchedSpace,
    #[error("embedding is not isometric: {0}")]
    NonIsometric(String),
    #[error("element is not invertible (zero unit part)")]
    NotInvertible,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("composition of differentials is nonzero (witness column {0})")]
    NonzeroComposition(usize),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(usize),
    #[error("flags {0} and {1} are adjacent at their vertex")]
    AdjacentFlags(usize, usize),
    #[error("flags {0} and {1} have different colors")]
    ColorMismatch(usize, usize),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("pairing couples non-opposite hom blocks: {0}")]
    PairingBlock(String),
    #[error("non-composable word in R: {0}")]
    NonComposable(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
