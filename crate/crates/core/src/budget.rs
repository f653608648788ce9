//! Resource caps for exhaustive sweeps and long trajectories.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest ring swept over all 2^n configurations.
    pub exhaustive_n: usize,
    /// Longest trajectory, in steps, explored by cycle detection.
    pub steps: u64,
    /// Largest period (in substeps) of a normalized block sequence.
    pub period_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { exhaustive_n: 24, steps: 10_000_000, period_cap: 10_080 }
    }
}

impl Budget {
    /// Parses overrides such as `exhaustive_n=20,steps=1000000,period_cap=5040`.
    pub fn parse_overrides(&self, text: &str) -> Result<Budget> {
        let mut out = *self;
        let mut pos = 0;
        for item in text.split(',') {
            let trimmed = item.trim();
            if !trimmed.is_empty() {
                let (key, value) = trimmed
                    .split_once('=')
                    .ok_or_else(|| Error::parse(pos, format!("expected key=value, got {trimmed:?}")))?;
                let value: u64 = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("invalid number {value:?}")))?;
                match key.trim() {
                    "exhaustive_n" => out.exhaustive_n = value as usize,
                    "steps" => out.steps = value,
                    "period_cap" => out.period_cap = value as usize,
                    other => return Err(Error::parse(pos, format!("unknown budget key {other:?}"))),
                }
            }
            pos += item.len() + 1;
        }
        if out.exhaustive_n > 32 {
            return Err(Error::InvalidArgument("exhaustive_n must be at most 32".into()));
        }
        Ok(out)
    }

    /// Defaults overridden by the `ECA_BUDGET` environment variable, if set.
    pub fn from_env() -> Result<Budget> {
        match std::env::var("ECA_BUDGET") {
            Ok(text) => Budget::default().parse_overrides(&text),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub(crate) fn check_exhaustive(&self, n: usize) -> Result<()> {
        if n > self.exhaustive_n {
            return Err(Error::BudgetExceeded(format!(
                "exhaustive sweep over 2^{n} states exceeds cap 2^{}",
                self.exhaustive_n
            )));
        }
        Ok(())
    }
}
