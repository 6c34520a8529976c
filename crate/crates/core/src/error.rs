use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pairs imply {element} < {element}")]
    CycleDetected { element: usize },
    #[error("index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{what}: size {n} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("relation marked closed is not transitive: {0} < {1} < {2} but not {0} < {2}")]
    NotTransitive(usize, usize, usize),
    #[error("pattern has {n} elements, exhaustive search supports at most {limit}")]
    PatternTooLarge { n: usize, limit: usize },
    #[error("expected {expected} blocks, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("block {index} is empty")]
    EmptyBlock { index: usize },
    #[error("element counts differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("realizer search supports n <= 10 and 1 <= k <= 3, got n = {n}, k = {k}")]
    SearchBoundExceeded { n: usize, k: usize },
    #[error("not an interval order")]
    NotIntervalOrder,
    #[error("not a semiorder")]
    NotSemiorder,
    #[error("boundary {boundary} needs at least {needed} levels, window has {height}")]
    BoundaryTooLarge {
        boundary: usize,
        needed: usize,
        height: usize,
    },
    #[error("layered presentation has an infinite level")]
    LevelInfinite,
    #[error("invalid layered presentation: {0}")]
    InvalidLayering(String),
    #[error("exhaustive autonomous-set scan supports n <= {limit}, got {n}")]
    TooLargeForExhaustive { n: usize, limit: usize },
    #[error("powerset tower supports at most 3 levels, got {0}")]
    TowerTooTall(usize),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("presentation is not a strict order on the window: {0:?}")]
    NotStrictOrder(Vec<usize>),
    #[error("order is not contained in the natural order: {0} < {1} but {0} > {1} in N")]
    ContainmentViolated(usize, usize),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("substitution is not prolongable from seed '{0}'")]
    NotProlongable(char),
    #[error("prefix of length {length} is too short, need at least {required}")]
    PrefixTooShort { length: usize, required: usize },
    #[error("factor set is not closed under factors: {0:?} is missing")]
    NotFactorClosed(String),
    #[error("margin {margin} leaves no quantified level among {levels}")]
    MarginTooSmall { margin: usize, levels: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("document error: {0}")]
    Document(String),
}
