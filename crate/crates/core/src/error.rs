use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("invalid character {0:?} in word (expected a-z or A-Z)")]
    InvalidCharacter(char),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank must be between {min} and 26, got {rank}")]
    BadRank { rank: usize, min: usize },

    #[error("trivial element")]
    TrivialElement,

    #[error("power exponent must be positive")]
    ZeroPower,

    #[error("invalid Whitehead automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("increase depth: closure did not stabilize within {0} layers")]
    DepthExhausted(usize),

    #[error("singular matrix (|det| = {0:e})")]
    Singular(f64),

    #[error("height must be strictly positive, got {0}")]
    NonPositiveHeight(f64),

    #[error("geodesic endpoints coincide")]
    CoincidentEndpoints,

    #[error("the identity has no isolated fixed points")]
    IdentityFixedPoints,

    #[error("no translation length: isometry is elliptic")]
    NoTranslationLength,

    #[error("word too long for double precision")]
    Overflow,

    #[error("choose different normalization: a generator image fixes the point sent to infinity")]
    Normalization,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("representation file: {0}")]
    RepresentationFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
