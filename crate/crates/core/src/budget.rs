use crate::error::{Error, Result};

/// Upper limit on the elementary steps an exhaustive routine may spend.
///
/// Each exhaustive routine documents its own cost formula and refuses to run
/// when the estimate exceeds the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub const DEFAULT_STEPS: u64 = 1_000_000_000;

    pub const fn new(steps: u64) -> Self {
        Budget(steps)
    }

    pub const fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    pub const fn steps(self) -> u64 {
        self.0
    }

    /// Fails with [`Error::BudgetExceeded`] when `required` is over budget.
    pub fn admit(self, required: u128) -> Result<()> {
        if required > u128::from(self.0) {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT_STEPS)
    }
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        let num = u128::from(n - i);
        acc = match acc.checked_mul(num) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}
