use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid scalar literal {0:?}")]
    InvalidScalar(String),

    #[error("invalid degree window [{lo}, {hi}]")]
    InvalidWindow { lo: i32, hi: i32 },

    #[error("window [{lo}, {hi}] too small: cohomology needs hi - lo >= 2")]
    WindowTooSmall { lo: i32, hi: i32 },

    #[error("window insufficient: {0}")]
    WindowInsufficient(String),

    #[error("d∘d ≠ 0 in degree {degree}")]
    DifferentialNotSquareZero { degree: i32 },

    #[error("not a chain map in degree {degree}")]
    NotChainMap { degree: i32 },

    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("augmentation is not a DG algebra homomorphism: {0}")]
    NotAugmentation(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("hypotheses unmet: {0}")]
    HypothesesUnmet(String),

    #[error("representation unavailable: {0}")]
    NotRepresentable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
