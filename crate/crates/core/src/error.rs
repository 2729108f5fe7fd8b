use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structure constants are not commutative at (e{i}, e{j})")]
    NotCommutative { i: usize, j: usize },
    #[error("structure constants are not associative at (e{i}, e{j}, e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("the given unit vector is not a multiplicative identity")]
    NoUnit,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("ideal has infinite index")]
    InfiniteIndex,
    #[error("not a subring: {0}")]
    NotASubring(String),
    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("rank {rank} exceeds the cap {cap}")]
    RankCapExceeded { rank: usize, cap: usize },
    #[error("{what}: size {size} exceeds the cap {cap}")]
    CapExceeded { what: String, size: String, cap: String },
    #[error("could not factor the composite cofactor {0}")]
    NeedsFactorization(BigInt),
    #[error("the order is not reduced")]
    NotReduced,
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not divisible as required")]
    NotDivisible(String),
    #[error("not a unit solution: {0}")]
    NotAUnitSolution(String),
    #[error("unknown gadget family `{0}`")]
    UnknownFamily(String),
}

impl Error {
    /// True for errors that report a resource cap rather than a bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::DegreeCapExceeded { .. } | Error::RankCapExceeded { .. } | Error::CapExceeded { .. }
        )
    }

    pub fn cap(what: impl Into<String>, size: impl ToString, cap: impl ToString) -> Self {
        Error::CapExceeded { what: what.into(), size: size.to_string(), cap: cap.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
