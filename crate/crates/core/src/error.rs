use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has {0} vertices, limit is {max}", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("visiting order is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("canonical form supports at most {max} vertices, got {0}", max = crate::canon::MAX_CANON_VERTICES)]
    CanonLimit(usize),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("a class needs at least one excluded minor")]
    EmptySpec,
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("conflicting counts at n = {n}: {existing} vs {new}")]
    CountConflict {
        n: usize,
        existing: String,
        new: String,
    },
    #[error("operation needs category {expected}, spec is {actual}")]
    WrongCategory {
        expected: &'static str,
        actual: &'static str,
    },
    #[error("pattern enumeration reached the cap of {cap} vertices without terminating")]
    PatternCap { cap: usize },
    #[error("f({lo}) and f({hi}) do not bracket a sign change")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("argument series must have zero constant term")]
    NonzeroConstant,
}

pub type Result<T> = std::result::Result<T, Error>;
