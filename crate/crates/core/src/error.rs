use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("compact word format supports rank <= 26, got {0}")]
    CompactRankExceeded(usize),
    #[error("unknown token {token:?} at byte {offset}")]
    UnknownToken { token: String, offset: usize },
    #[error("generator index {index} exceeds alphabet rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word mixes compact and extended letter formats")]
    MixedFormats,
    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("generators span the trivial subgroup")]
    TrivialSubgroup,
    #[error("core of the graph is empty")]
    EmptyCore,
    #[error("graph is not connected")]
    NotConnected,
    #[error("generator {0} of the first subgroup is not in the second")]
    NotSubgroup(String),
    #[error("endomorphism is not an automorphism")]
    NotAutomorphism,
    #[error("expected {expected} image words, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("size limit exceeded: {what} would produce {count} items (cap {cap})")]
    SizeLimit { what: &'static str, count: u128, cap: u128 },
    #[error("random construction gave up after {0} attempts")]
    RetryLimit(usize),
    #[error("independent routes disagree: {0}")]
    MismatchBug(String),
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
