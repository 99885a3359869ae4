//! Colimits of finite diagrams of categories through decorated zig-zags, and
//! the mapping spaces of the rigidification of finite simplicial sets.

pub mod colim;
pub mod decor;
pub mod fincat;
pub mod fixtures;
pub mod par;
pub mod rigid;
pub mod sset;
pub mod unionfind;
pub mod zigzag;

use thiserror::Error;

/// Default node budget when `ZZC_BUDGET` is unset.
pub const DEFAULT_BUDGET: usize = 4_000_000;

/// Upper bound on the number of items an enumeration may create.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Budget {
    /// Reads `ZZC_BUDGET`, falling back to [`DEFAULT_BUDGET`].
    pub fn from_env() -> Self {
        std::env::var("ZZC_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or(Budget(DEFAULT_BUDGET), Budget)
    }

    pub fn check(self, used: usize, what: &'static str) -> Result<(), BudgetExceeded> {
        if used > self.0 {
            Err(BudgetExceeded {
                limit: self.0,
                what,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("budget of {limit} exceeded while enumerating {what}")]
pub struct BudgetExceeded {
    pub limit: usize,
    pub what: &'static str,
}
