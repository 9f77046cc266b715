//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by exact-arithmetic and verification operations.
///
/// All arithmetic in this crate is exact, so there are no tolerance or
/// rounding failures; every variant is a domain violation of some kind.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    ZeroCyclotomicOrder,

    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("order {from} does not divide target order {to}")]
    NotLiftable { from: u64, to: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus must be an odd positive integer, got {0}")]
    EvenModulus(u64),

    #[error("no character with index {index} mod {modulus} (there are {count})")]
    CharacterIndex {
        modulus: u64,
        index: usize,
        count: usize,
    },

    #[error("series truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("series denominator has zero constant term")]
    NonUnitDenominator,

    #[error("coefficient index {index} exceeds truncation order {truncation}")]
    CoefficientIndex { index: usize, truncation: usize },

    #[error("weight must be odd, got {0}")]
    EvenWeight(u64),

    #[error("weights must be positive, got {0:?}")]
    ZeroWeight([u64; 3]),

    #[error("multinomial indices {k} + {l} + {m} do not sum to {n}")]
    MultinomialIndices { n: usize, k: usize, l: usize, m: usize },

    #[error("form takes {expected} grid arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("theorem id must lie in 1..=8, got {0}")]
    UnknownTheorem(u8),

    #[error("character must be rational-valued (order <= 2), but has order {0}")]
    UnsupportedCharacter(u64),

    #[error("shift must be odd, got {0}")]
    EvenShift(u64),

    #[error("summation limit must be odd, got {0}")]
    EvenLimit(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {p} must be coprime to the modulus {d}")]
    PrimeDividesModulus { p: u64, d: u64 },

    #[error("level count must be at least 1")]
    ZeroLevels,
}

pub type Result<T> = std::result::Result<T, Error>;
