use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero elements is undefined")]
    UndefinedGcd,
    #[error("lcm with a zero argument is undefined")]
    UndefinedLcm,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("the zero element has no content")]
    ZeroContent,
    #[error("degenerate lattice: basis has zero determinant")]
    DegenerateLattice,
    #[error("similarity multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("shift vectors {0} and {1} are congruent modulo the generating lattice")]
    CongruentShifts(usize, usize),
    #[error("a point packing needs at least one shift vector")]
    EmptyPacking,
    #[error("unsupported lattice: {0}")]
    UnsupportedLattice(String),
    #[error("not a subpacking: {0}")]
    NotASubpacking(String),
}

pub type Result<T> = std::result::Result<T, Error>;
