use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("illegal rank {rank} for type {family}")]
    IllegalRank { family: char, rank: usize },
    #[error("cannot parse root system name `{0}`")]
    BadSystemName(String),
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("vector {0:?} is not a positive root")]
    NotPositive(Vec<i64>),
    #[error("rank {rank} exceeds the guard {guard}")]
    RankGuardExceeded { rank: usize, guard: usize },
    #[error("empty set of simple roots")]
    EmptyS,
    #[error("index {0} is not a simple root index")]
    BadSimpleIndex(usize),
    #[error("set is not abelian")]
    NotAbelian,
    #[error("roots are not members of the ideal")]
    NotMembers,
    #[error("set has {found} elements, expected {expected}")]
    RankViolation { expected: usize, found: usize },
    #[error("reduced set is singular")]
    SingularSet,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("orbit exceeds {0} elements")]
    OrbitGuardExceeded(usize),
    #[error("ideal has {0} roots, more than the 128 supported")]
    IdealTooLarge(usize),
    #[error("no facet at simple root {0} (1-based)")]
    UnknownFacet(usize),
    #[error("unknown nilradical type {0}")]
    UnknownType(String),
    #[error("certification failed: {0}")]
    CertificationFailure(String),
}
