//! Optional JSON config file supplying defaults for the common flags;
//! explicit command-line flags always win.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub graph: Option<String>,
    pub algo: Option<String>,
    pub mode: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<u32>,
    pub tape_bits: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }
}

/// First present value wins: explicit flag, then config file, then default.
pub fn pick<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Like [`pick`] but without a default.
pub fn pick_required<T: Clone>(flag: Option<T>, file: Option<T>, what: &str) -> CliResult<T> {
    flag.or(file)
        .ok_or_else(|| CliError::Config(format!("missing required option `{what}`")))
}
