use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Caps on exhaustive enumeration, checked before any loop starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Largest set that may be enumerated element by element.
    pub max_elements: u64,
    /// Largest double loop (or brute-force search space).
    pub max_pairs: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_elements: 1 << 24, max_pairs: 1 << 26 }
    }
}

impl OracleBudget {
    pub fn new(max_elements: u64, max_pairs: u64) -> Result<Self> {
        if max_elements == 0 || max_pairs == 0 {
            return Err(Error::InvalidInput("budget caps must be positive".into()));
        }
        Ok(OracleBudget { max_elements, max_pairs })
    }

    /// Same pair cap, different element cap.
    pub fn with_max_elements(self, max_elements: u64) -> Self {
        OracleBudget { max_elements: max_elements.max(1), ..self }
    }

    pub fn check_elements(&self, needed: u128) -> Result<()> {
        check(needed, self.max_elements)
    }

    pub fn check_pairs(&self, needed: u128) -> Result<()> {
        check(needed, self.max_pairs)
    }
}

fn check(needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::BudgetExceeded { needed, cap: cap as u128 })
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`, for budget arithmetic.
pub fn saturating_pow(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
