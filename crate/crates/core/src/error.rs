use thiserror::Error;

/// Errors produced by semigroup construction and the level-set machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("generators must be positive, got {0}")]
    NonPositiveGenerator(i64),

    #[error("gcd of the generators is {0}, not 1; the complement would be infinite")]
    NotCoprime(i64),

    #[error("generators too large to tabulate: {0}")]
    TooLarge(String),

    #[error("{0} is not an element of the semigroup")]
    NotAMember(i64),

    #[error("{value} is not a level-skipping element at level {level}")]
    NotInDSet { value: i64, level: u32 },

    #[error("level must be at least {min}, got {got}")]
    InvalidLevel { min: u32, got: u32 },

    #[error("residue {residue} out of range for multiplicity {multiplicity}")]
    InvalidResidue { residue: usize, multiplicity: i64 },

    #[error("invalid search constraints: {0}")]
    InvalidConstraints(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
