use alloc::string::String;

/// Errors raised by the group machinery.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("permutation degrees differ ({left} vs {right})")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection")]
    NotAPermutation,
    #[error("generator list is empty")]
    NoGenerators,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("generator index {index} out of range for {ngens} generators")]
    GeneratorOutOfRange { index: usize, ngens: usize },
    #[error("{what} exceeded its limit of {limit}")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("invalid family descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("coset enumeration aborted at {limit} cosets")]
    EnumerationAborted { limit: usize },
    #[error("diagonal class {class} contains no vertex F0·β^i")]
    UnreachableClass { class: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
