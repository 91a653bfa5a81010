//! Node-count budgets for the potentially explosive searches.
//!
//! A [`Budget`] is a simple step counter passed by `&mut` into recursive
//! searches. One "step" is one search node or one candidate-witness scan;
//! the unit is deliberately coarse — budgets exist so a hostile input makes
//! an operation fail loudly instead of hanging, not to meter work precisely.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    /// A budget that never runs out.
    pub fn unlimited() -> Self {
        Budget {
            limit: u64::MAX,
            spent: 0,
        }
    }

    /// Count `steps` units of work, failing once the limit is crossed.
    pub fn tick(&mut self, steps: u64) -> Result<()> {
        self.spent = self.spent.saturating_add(steps);
        if self.spent > self.limit {
            Err(Error::BudgetExceeded { spent: self.spent })
        } else {
            Ok(())
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.spent)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}
