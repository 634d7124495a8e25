use thiserror::Error;

/// Errors raised by field construction, counting and the oracles.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial is not irreducible over the base field")]
    NotIrreducible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("enumeration of {needed} items exceeds the budget of {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("non-integral result in {0}")]
    NonIntegral(&'static str),
    #[error("Newton recurrence produced a non-integral coefficient c_{0}")]
    NonIntegralCoefficient(usize),
    #[error("point count {count} at degree {m} violates the Hasse-Weil bound")]
    HasseWeilViolation { m: usize, count: u64 },
    #[error("L-polynomial predicts {predicted} points at degree {m}, direct count gives {counted}")]
    InconsistentCounts { m: usize, predicted: String, counted: u64 },
    #[error("predicted point count at degree {0} is negative")]
    NegativeCount(usize),
    #[error("polynomial evaluation f_{i}({j}) vanishes mod p")]
    ZeroEvaluation { i: u32, j: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for errors that can only come from an internal inconsistency.
    pub fn is_invariant_breach(&self) -> bool {
        matches!(
            self,
            Error::NonIntegral(_)
                | Error::NonIntegralCoefficient(_)
                | Error::NegativeCount(_)
                | Error::InconsistentCounts { .. }
                | Error::HasseWeilViolation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
