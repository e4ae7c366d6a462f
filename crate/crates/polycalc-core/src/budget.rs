use crate::error::{Error, Result};

/// Default cap on the number of candidates any enumerating operation may
/// materialize or scan. Section/hom counts grow exponentially, so every
/// enumeration charges against a budget and fails fast when it would blow up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Candidate-count cap carried by every enumerating operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// Read the default budget from `POLYCALC_BUDGET` when set.
    pub fn from_env() -> Self {
        match std::env::var("POLYCALC_BUDGET") {
            Ok(v) => v.parse().map(Budget).unwrap_or_default(),
            Err(_) => Budget::default(),
        }
    }

    /// Fail fast when an operation would need more than the budgeted number
    /// of candidates.
    pub fn charge(&self, required: u128, op: &str) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::BudgetExceeded {
                op: op.to_string(),
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` in u128, saturating on overflow. Saturation is fine here: the
/// result is only ever compared against a budget far below `u128::MAX`.
pub fn pow128(base: u128, exp: u128) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            return acc;
        }
    }
    acc
}

/// Product of counts in u128, saturating on overflow.
pub fn mul128<I: IntoIterator<Item = u128>>(counts: I) -> u128 {
    let mut acc: u128 = 1;
    for c in counts {
        acc = acc.saturating_mul(c);
    }
    acc
}
