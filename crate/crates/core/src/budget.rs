use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Node budget used when nothing else is configured.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A shared node counter for exhaustive searches.
///
/// Searches call [`Budget::tick`] once per node; exhaustion is reported as
/// [`Error::Budget`] and never as a negative answer.
#[derive(Debug)]
pub struct Budget {
    what: &'static str,
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(what: &'static str, limit: u64) -> Self {
        Budget { what, limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited(what: &'static str) -> Self {
        Budget::new(what, u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    #[inline]
    pub fn tick(&self) -> Result<()> {
        self.ticks(1)
    }

    pub fn ticks(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            Err(Error::Budget { what: self.what, limit: self.limit })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustion_is_an_error() {
        let b = Budget::new("test", 3);
        assert!(b.tick().is_ok());
        assert!(b.ticks(2).is_ok());
        let err = b.tick().unwrap_err();
        assert!(err.is_budget());
        assert_eq!(b.used(), 4);
    }
}
