use thiserror::Error;

/// Errors produced by the classification library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid affine label: {0}")]
    InvalidLabel(String),

    #[error("not a diagram automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("automorphism is transitive; use the rotation rule instead of folding")]
    Transitive,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("zero has no multiplicative order")]
    ZeroOrder,

    #[error("not a root of unity: {0}")]
    NotRootOfUnity(String),

    #[error("automorphisms do not commute")]
    NonCommuting,

    #[error("not a unit monomial: {0}")]
    NonUnit(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
