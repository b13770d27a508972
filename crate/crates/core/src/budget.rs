use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Limits for the exact oracles and enumerators. A search that runs out
/// returns an error instead of a partial answer.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_millis: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 50_000_000,
            max_millis: None,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            max_millis: None,
        }
    }

    pub(crate) fn meter(&self, what: &str) -> Meter {
        Meter {
            what: what.to_string(),
            limit: self.max_nodes,
            used: 0,
            deadline: self
                .max_millis
                .map(|ms| (ms, Instant::now() + Duration::from_millis(ms))),
        }
    }
}

/// Running counter handed to a single search.
pub(crate) struct Meter {
    what: String,
    limit: u64,
    used: u64,
    deadline: Option<(u64, Instant)>,
}

impl Meter {
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded {
                what: self.what.clone(),
                limit: self.limit,
            });
        }
        if self.used.is_multiple_of(4096) {
            if let Some((ms, deadline)) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::TimeExceeded(ms));
                }
            }
        }
        Ok(())
    }
}
