//! Run configuration shared by the command line and the suite runner.

use crate::error::{Error, Result};
use serde::Serialize;

pub const SEED_ENV: &str = "PRIME_SCOPE_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Json,
    Text,
}

/// Defaults: height bound 1000, precision cap 1000, seed 0, JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Config {
    pub height_bound: u64,
    pub precision: u32,
    pub seed: u64,
    pub output: Output,
}

impl Default for Config {
    fn default() -> Self {
        Config { height_bound: 1000, precision: 1000, seed: 0, output: Output::Json }
    }
}

impl Config {
    pub fn validate(self) -> Result<Self> {
        if self.height_bound == 0 || self.precision == 0 {
            return Err(Error::Invalid("height bound and precision must be positive".into()));
        }
        Ok(self)
    }

    /// Replaces the seed with the value of PRIME_SCOPE_SEED when it is set.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = v.trim().parse().map_err(|_| Error::Invalid(format!("{SEED_ENV}={v} is not an unsigned integer")))?;
        }
        Ok(self)
    }
}
