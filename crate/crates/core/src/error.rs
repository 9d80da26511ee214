use thiserror::Error;

/// Errors raised by monoid construction and invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyInput,
    #[error("generator {0} is not a positive integer")]
    NonPositiveGenerator(i64),
    #[error("generators have gcd {0} > 1, so the complement is infinite")]
    NonCoprime(i64),
    #[error("{0} is not an element of the monoid")]
    NotAMember(i64),
    #[error("S = ℕ: invariants undefined")]
    IsAllOfN,
    #[error("factorizations have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("distance to an empty set of factorizations")]
    EmptySet,
    #[error("operation needs at least two generators")]
    TooFewGenerators,
    #[error("{n} - n_{index} is not in the monoid")]
    AtomNotBelow { n: i64, index: usize },
    #[error("{0} is not an atom of the monoid")]
    NotAnAtom(i64),
    #[error("atom index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("parameter h must be 1 for this check (got {0})")]
    HNotOne(i64),
    #[error("invalid generalized arithmetic sequence parameters: {0}")]
    InvalidParams(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("invalid sweep configuration: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
