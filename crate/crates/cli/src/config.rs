//! Run configuration: flags, an optional `key = value` file and
//! environment defaults for the explosion guards.

use std::path::Path;

use anyhow::{bail, Context as _, Result};
use clap::ValueEnum;
use serde::Deserialize;
use simctl_core::random::RandomParams;
use simctl_core::Limits;

pub const ENV_MAX_STATES: &str = "SIMCTL_MAX_STATES";
pub const ENV_MAX_COVERS: &str = "SIMCTL_MAX_COVERS";
pub const ENV_MAX_CHOICES: &str = "SIMCTL_MAX_CHOICES";

pub const DEFAULT_DOT_WIDTH: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Contents of a config file. Every key is optional.
///
/// ```toml
/// max_states = 5000
/// format = "json"
///
/// [random]
/// plant_states = 6
/// ```
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub max_states: Option<usize>,
    pub max_covers: Option<usize>,
    pub max_choices: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub dot_width: Option<usize>,
    pub random: Option<RandomParams>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Guard caps given on the command line.
#[derive(Debug, Default, Clone, Copy)]
pub struct CapFlags {
    pub max_states: Option<usize>,
    pub max_covers: Option<usize>,
    pub max_choices: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub limits: Limits,
    pub seed: Option<u64>,
    pub format: Format,
    pub dot_width: usize,
    pub random: RandomParams,
}

fn env_cap(var: &str) -> Result<Option<usize>> {
    match std::env::var(var) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .with_context(|| format!("{var}={v} is not a number")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => bail!("{var}: {e}"),
    }
}

fn cap(name: &str, flag: Option<usize>, file: Option<usize>, env: &str, default: usize) -> Result<usize> {
    let v = match flag.or(file) {
        Some(v) => v,
        None => env_cap(env)?.unwrap_or(default),
    };
    if v == 0 {
        bail!("{name} must be positive");
    }
    Ok(v)
}

impl RunConfig {
    /// Flags win over the config file, which wins over the environment.
    pub fn resolve(
        file: Option<&Path>,
        caps: CapFlags,
        seed: Option<u64>,
        format: Option<Format>,
        dot_width: Option<usize>,
    ) -> Result<Self> {
        let file = match file {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let d = Limits::default();
        let limits = Limits {
            max_states: cap("max_states", caps.max_states, file.max_states, ENV_MAX_STATES, d.max_states)?,
            max_covers: cap("max_covers", caps.max_covers, file.max_covers, ENV_MAX_COVERS, d.max_covers)?,
            max_choices: cap(
                "max_choices",
                caps.max_choices,
                file.max_choices,
                ENV_MAX_CHOICES,
                d.max_choices,
            )?,
        };
        Ok(RunConfig {
            limits,
            seed: seed.or(file.seed),
            format: format.or(file.format).unwrap_or(Format::Text),
            dot_width: dot_width.or(file.dot_width).unwrap_or(DEFAULT_DOT_WIDTH),
            random: file.random.unwrap_or_default(),
        })
    }
}
