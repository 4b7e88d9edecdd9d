//! Resource limits for long-running enumerations.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    max_rays: Option<usize>,
    max_memory_mb: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub fn with_max_rays(mut self, rays: usize) -> Self {
        self.max_rays = Some(rays);
        self
    }

    pub fn with_memory_mb(mut self, mb: usize) -> Self {
        self.max_memory_mb = Some(mb);
        self
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn check_time(&self, what: &str) -> Result<()> {
        if self.expired() {
            return Err(Error::Budget(format!("time limit reached during {what}")));
        }
        Ok(())
    }

    /// Fails when `count` rays of roughly `bytes_each` bytes exceed a limit.
    pub fn check_rays(&self, count: usize, bytes_each: usize) -> Result<()> {
        if let Some(max) = self.max_rays {
            if count > max {
                return Err(Error::Budget(format!("{count} intermediate rays exceed the limit of {max}")));
            }
        }
        if let Some(mb) = self.max_memory_mb {
            let used = count.saturating_mul(bytes_each) / (1 << 20);
            if used > mb {
                return Err(Error::Budget(format!("about {used} MB of rays exceed the limit of {mb} MB")));
            }
        }
        Ok(())
    }
}
