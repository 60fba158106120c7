//! Node budgets for exhaustive searches.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {limit} nodes exceeded")]
pub struct BudgetExceeded {
    pub limit: u64,
}

/// Shared counter of visited search nodes with a hard cap.
///
/// A budget can be shared across threads; every search in the crate charges
/// one node per candidate it tries.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 10_000_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn tick(&self) -> Result<(), BudgetExceeded> {
        let used = self.used.fetch_add(1, Ordering::Relaxed);
        if used >= self.limit {
            Err(BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_NODES)
    }
}
