use thiserror::Error;

use crate::brauer::Place;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("values do not define a homomorphism to Z/{0}")]
    NotAHomomorphism(u32),
    #[error("objects live on different groups")]
    GroupMismatch,
    #[error("unsupported cochain degree {0}")]
    UnsupportedDegree(usize),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("defining system entry ({0},{1}) is missing")]
    MissingEntry(usize, usize),
    #[error("defining system condition fails at ({0},{1})")]
    NotADefiningSystem(usize, usize),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("zero is not allowed here")]
    ZeroArgument,
    #[error("cannot factor {value} by trial division up to {bound}")]
    FactorBound { value: i128, bound: u64 },
    #[error("{0} is a perfect square")]
    GlobalSquare(i128),
    #[error("class does not split: all entries are local squares at {0}")]
    NotSplit(Place),
    #[error("invalid invariant table: {0}")]
    InvalidInvariants(String),
    #[error("search bound exhausted: no prime up to {bound} works")]
    SearchExhausted { bound: u64 },
    #[error("integer overflow")]
    Overflow,
    #[error("unknown group name `{0}`")]
    UnknownGroup(String),
    #[error("internal error: {0}")]
    Internal(String),
}
