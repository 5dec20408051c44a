use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use hallpi::par::Execution;
use hallpi::perm::DEFAULT_MAX_ORDER;
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// Settings from `--config`; command-line flags take precedence.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub max_group_order: u64,
    pub format: Option<Format>,
    pub parallelism: Execution,
    pub scan: ScanBounds,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanBounds {
    pub pi_size: usize,
    /// Upper bound on candidate primes; 0 selects the default of 101.
    pub max_prime: u64,
}

impl Default for ScanBounds {
    fn default() -> Self {
        ScanBounds { pi_size: 2, max_prime: 0 }
    }
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_group_order: DEFAULT_MAX_ORDER,
            format: None,
            parallelism: Execution::default(),
            scan: ScanBounds::default(),
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let cfg = match path {
            None => Config::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_group_order == 0 {
            bail!("max_group_order must be positive");
        }
        if self.scan.pi_size == 0 {
            bail!("scan.pi_size must be positive");
        }
        Ok(())
    }
}
