use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} outside the supported range 2..=32")]
    UnsupportedField(u32),
    #[error("element {elem} is not in GF({q})")]
    ElementOutOfRange { elem: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("enumeration of {q}^{rank} row-space vectors exceeds the 2^24 cap")]
    EnumerationCap { q: u32, rank: usize },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("rank-zero matroid: cogirth is undefined")]
    RankZero,
    #[error("weight count {got} does not match {expected} columns")]
    WeightLength { expected: usize, got: usize },
    #[error("weight of element {index} is not positive")]
    NonpositiveWeight { index: usize },
    #[error("label count {got} does not match {expected} columns")]
    LabelLength { expected: usize, got: usize },
    #[error("duplicate label {0}")]
    DuplicateLabel(usize),
    #[error("unknown label {0}")]
    UnknownLabel(usize),
    #[error("matroid has loops at labels {0:?}")]
    HasLoops(Vec<usize>),
    #[error("matroid is not simple")]
    NotSimple,
    #[error("point set is not a flat")]
    NotFlat,
    #[error("point is not a normalized vector of length {0}")]
    BadPoint(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matroid is a full projective geometry PG({}, {q}); use the projective-geometry check", .rank - 1)]
    IsProjectiveGeometry { rank: usize, q: u32 },
    #[error("matroid is not a full projective geometry")]
    NotProjectiveGeometry,
    #[error("expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("embedding does not match the matroid")]
    EmbeddingMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
