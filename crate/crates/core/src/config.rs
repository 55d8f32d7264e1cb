//! Run configuration: defaults, then a TOML file, then `KHS_*` variables,
//! then command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assemble::TableFormat;
use crate::cpbar::CpMode;
use crate::error::{Error, Result};
use crate::numtheory::VERIFIED_KV_BOUND;
use crate::params::Params;

pub const ENV_CACHE: &str = "KHS_CACHE";
pub const ENV_KV_BOUND: &str = "KHS_KV_BOUND";
pub const ENV_CP_MODE: &str = "KHS_CP_MODE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub bernoulli_cache_path: Option<PathBuf>,
    pub verified_kv_bound: u64,
    pub default_cp_mode: CpMode,
    pub output_format: TableFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bernoulli_cache_path: None,
            verified_kv_bound: VERIFIED_KV_BOUND,
            default_cp_mode: CpMode::Calibrated,
            output_format: TableFormat::Ascii,
        }
    }
}

/// Values given on the command line; `None` leaves the lower layers in place.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub bernoulli_cache_path: Option<PathBuf>,
    pub verified_kv_bound: Option<u64>,
    pub default_cp_mode: Option<CpMode>,
    pub output_format: Option<TableFormat>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Config::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Applies environment variables read through `var`.
    pub fn apply_env(&mut self, var: impl Fn(&str) -> Option<String>) -> Result<()> {
        if let Some(v) = var(ENV_CACHE).filter(|v| !v.is_empty()) {
            self.bernoulli_cache_path = Some(PathBuf::from(v));
        }
        if let Some(v) = var(ENV_KV_BOUND) {
            self.verified_kv_bound = v
                .trim()
                .parse()
                .map_err(|e| Error::Config(format!("{ENV_KV_BOUND}={v:?}: {e}")))?;
        }
        if let Some(v) = var(ENV_CP_MODE) {
            self.default_cp_mode = v.trim().parse()?;
        }
        Ok(())
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(p) = &o.bernoulli_cache_path {
            self.bernoulli_cache_path = Some(p.clone());
        }
        if let Some(b) = o.verified_kv_bound {
            self.verified_kv_bound = b;
        }
        if let Some(m) = o.default_cp_mode {
            self.default_cp_mode = m;
        }
        if let Some(f) = o.output_format {
            self.output_format = f;
        }
    }

    /// All layers in order of increasing precedence.
    pub fn resolve(
        file: Option<&Path>,
        var: impl Fn(&str) -> Option<String>,
        overrides: &Overrides,
    ) -> Result<Config> {
        let mut config = match file {
            Some(path) => Config::from_file(path)?,
            None => Config::default(),
        };
        config.apply_env(var)?;
        config.apply_overrides(overrides);
        Ok(config)
    }

    pub fn params(&self) -> Params {
        Params {
            kv_bound: self.verified_kv_bound,
            cp_mode: self.default_cp_mode,
        }
    }
}
