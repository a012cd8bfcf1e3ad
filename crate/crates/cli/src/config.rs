use std::path::Path;

use anyhow::{Context, Result};
use drinfeld_core::opcalc::GridSpec;
use drinfeld_core::useries::UpBackend;
use serde::{Deserialize, Serialize};

/// A verification suite: one or more grids plus run options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub grid: Vec<GridSpec>,
    /// Identity names or letters; empty means all.
    #[serde(default)]
    pub identities: Vec<String>,
    /// Seeds for extra runs with randomized Atkin–Lehner representatives.
    #[serde(default)]
    pub al_seeds: Vec<u64>,
    #[serde(default)]
    pub series: SeriesDefaults,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

/// Defaults for the `series` subcommands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDefaults {
    pub precision: usize,
    pub backend: UpBackend,
}

impl Default for SeriesDefaults {
    fn default() -> Self {
        SeriesDefaults { precision: 30, backend: UpBackend::Shift }
    }
}

impl SuiteConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// q ∈ {2, 3}, π ∈ {t+1, t²+t+1}, P ∈ {t, t+2 where prime}, every
    /// weight k ≤ 8 with every type.
    pub fn default_suite() -> Self {
        let grid = [2u32, 3]
            .into_iter()
            .map(|q| {
                let weights = (1..=8).flat_map(|k| (0..=q as i64 - 2).map(move |m| (k, m))).collect();
                let p = if q == 3 { vec!["t".into(), "t+2".into()] } else { vec!["t".into()] };
                GridSpec { q, modulus: None, pi: vec!["t+1".into(), "t^2+t+1".into()], p, weights }
            })
            .collect();
        SuiteConfig { grid, identities: vec![], al_seeds: vec![], series: SeriesDefaults::default(), output: None }
    }
}
