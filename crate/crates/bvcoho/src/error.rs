use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NonGroup { reason: String, witness: Vec<usize> },
    #[error("group closure exceeds the cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the cap {cap} for this complex")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain does not lie in the component of {0}")]
    NotInComponent(usize),
    #[error("incompatible operands: {0}")]
    KindMismatch(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("{p} does not divide {m}; the periodic resolution is not minimal")]
    NotModular { p: u32, m: usize },
    #[error("comparison map fails to commute at degree {degree}, marker {marker}")]
    NotChainMap { degree: usize, marker: usize },
    #[error("dual differential does not vanish at degree {0}")]
    NotMinimalHere(usize),
    #[error("{0} is not a class representative")]
    NotARepresentative(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
