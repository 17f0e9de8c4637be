use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("direction {k} out of range for rank {n}")]
    Direction { k: usize, n: usize },
    #[error("integer overflow while mutating")]
    Overflow,
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("matrix is not square")]
    NotSquare,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("word has an immediate repetition of letter {letter} at position {pos}; reduce it first")]
    Repetition { letter: usize, pos: usize },
    #[error("not a permutation")]
    NotPermutation,
    #[error("diagram is not realizable: {0}")]
    NotRealizable(String),
    #[error("c-column {col} lost sign-coherence")]
    SignCoherence { col: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {msg}")]
    BadParams { family: String, msg: String },
    #[error("invalid gluing: {0}")]
    Gluing(String),
    #[error("expression size limit exceeded")]
    ExpressionLimit,
    #[error("point lies on a kink at step {step}")]
    Kink { step: usize },
    #[error("invalid unfolding: {0}")]
    Unfolding(String),
    #[error("search stopped at the limit of {0} nodes")]
    NodeLimit(usize),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
