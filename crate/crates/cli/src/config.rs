//! Optional JSON config file: a flat object whose keys mirror the flag
//! names with hyphens replaced by underscores. Explicit flags always win
//! over config values.

use std::path::Path;

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub g: Option<f64>,
    pub r: Option<f64>,
    pub n_th: Option<f64>,
    pub phi: Option<f64>,
    pub axis: Option<String>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub steps: Option<usize>,
    pub format: Option<String>,
    pub output: Option<String>,
    pub cutoff: Option<usize>,
    pub eps_trunc: Option<f64>,
    pub tolerance: Option<f64>,
}

/// Loads the config file when a path is given; an absent flag means an
/// empty config. Unreadable file is an I/O failure; unparseable content or
/// unknown keys are usage errors (the user wrote that file).
pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

/// Output format shared by the report and sweep emitters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    /// Parses "csv"/"json"; `None` falls back to CSV.
    pub fn parse(name: Option<&str>) -> Result<Self, CliError> {
        match name {
            None | Some("csv") => Ok(OutputFormat::Csv),
            Some("json") => Ok(OutputFormat::Json),
            Some(other) => Err(CliError::Usage(format!(
                "unknown format '{other}': expected csv or json"
            ))),
        }
    }
}
