//! Engine caps. Operations that enumerate elements or subgroups take an
//! [`EngineConfig`] and fail with an explicit "uncertified" error instead of
//! silently degrading when a cap is hit.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::perm::MAX_DEGREE;

pub const DEFAULT_ORDER_CAP: u64 = 1000;
pub const DEFAULT_ELEMENT_CAP: u64 = 20_000;
pub const DEFAULT_DEGREE_CAP: usize = MAX_DEGREE;
pub const DEFAULT_TIME_BUDGET_SECS: u64 = 120;

/// Element cap for homomorphism-search targets.
pub const HOM_SEARCH_CAP: u64 = 20_000;

#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    /// Full subgroup-lattice enumeration is allowed up to this group order.
    pub order_cap: u64,
    /// Explicit element listings are allowed up to this group order.
    pub element_cap: u64,
    /// Largest permitted point set for constructed groups.
    pub degree_cap: usize,
    /// Soft deadline for long-running enumerations.
    pub deadline: Option<Instant>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            order_cap: DEFAULT_ORDER_CAP,
            element_cap: DEFAULT_ELEMENT_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            deadline: None,
        }
    }
}

impl EngineConfig {
    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    pub fn check_deadline(&self, what: &'static str) -> Result<()> {
        match self.deadline {
            Some(deadline) if Instant::now() > deadline => Err(Error::TimeBudget { what }),
            _ => Ok(()),
        }
    }
}
