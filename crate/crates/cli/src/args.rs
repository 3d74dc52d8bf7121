//! Flag definitions. Every parameter flag is optional at parse time; the
//! per-command handlers merge them with an optional JSON config file
//! (explicit flags win) and decide what is actually required.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "su11",
    version,
    about = "Phase sensitivity of a two-amplifier interferometer with a thermal seed, \
             a squeezed-vacuum seed, and parity readout"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one configuration and print the full report.
    Sensitivity(SensitivityArgs),
    /// Walk one parameter over a grid and emit one CSV row per point.
    Sweep(SweepArgs),
    /// Emit the data for one of the bundled sweep presets (fig2 .. fig6).
    Figure(FigureArgs),
    /// Compare the closed forms against the number-basis oracle on a grid.
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Args, Default)]
pub struct SensitivityArgs {
    /// Amplifier gain g (required, here or in the config file).
    #[arg(long = "g", value_name = "G", allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Squeezing strength r of the mode-b seed (default 0).
    #[arg(long = "r", value_name = "R", allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Mean thermal photon number of the mode-a seed (default 0).
    #[arg(long = "n-th", value_name = "N", allow_negative_numbers = true)]
    pub n_th: Option<f64>,
    /// Working phase in radians (default 0).
    #[arg(long = "phi", value_name = "PHI", allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Output format: csv (default) or json.
    #[arg(long = "format", value_name = "FMT")]
    pub format: Option<String>,
    /// Write to this path instead of stdout.
    #[arg(long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// JSON file supplying defaults for any of the other flags.
    #[arg(long = "config", value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct SweepArgs {
    /// Parameter to sweep: g, r, n_th, or phi.
    #[arg(long = "axis", value_name = "AXIS")]
    pub axis: Option<String>,
    /// Lower end of the sweep.
    #[arg(long = "min", value_name = "MIN", allow_negative_numbers = true)]
    pub min: Option<f64>,
    /// Upper end of the sweep.
    #[arg(long = "max", value_name = "MAX", allow_negative_numbers = true)]
    pub max: Option<f64>,
    /// Number of rows; endpoints are always included.
    #[arg(long = "steps", value_name = "N")]
    pub steps: Option<usize>,
    /// Fixed gain (required unless g is the axis).
    #[arg(long = "g", value_name = "G", allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Fixed squeezing strength (default 0).
    #[arg(long = "r", value_name = "R", allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Fixed thermal photon number (default 0).
    #[arg(long = "n-th", value_name = "N", allow_negative_numbers = true)]
    pub n_th: Option<f64>,
    /// Fixed working phase (default 0).
    #[arg(long = "phi", value_name = "PHI", allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Output format: csv (default) or json.
    #[arg(long = "format", value_name = "FMT")]
    pub format: Option<String>,
    /// Write to this path instead of stdout.
    #[arg(long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// JSON file supplying defaults for any of the other flags.
    #[arg(long = "config", value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Preset id: fig2, fig3, fig4, fig5, or fig6.
    #[arg(value_name = "ID")]
    pub id: String,
    /// Write to this path instead of stdout.
    #[arg(long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct OracleCheckArgs {
    /// Pin the gain axis to this single value instead of the default grid.
    #[arg(long = "g", value_name = "G", allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Pin the squeezing axis to this single value.
    #[arg(long = "r", value_name = "R", allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Pin the thermal axis to this single value.
    #[arg(long = "n-th", value_name = "N", allow_negative_numbers = true)]
    pub n_th: Option<f64>,
    /// Pin the phase axis to this single value.
    #[arg(long = "phi", value_name = "PHI", allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Highest kept photon number per mode (default 48).
    #[arg(long = "cutoff", value_name = "N")]
    pub cutoff: Option<usize>,
    /// Probability budget for truncating the input states (default 1e-9).
    #[arg(long = "eps-trunc", value_name = "X", allow_negative_numbers = true)]
    pub eps_trunc: Option<f64>,
    /// Largest tolerated |closed form - oracle| (default 1e-6).
    #[arg(long = "tolerance", value_name = "X", allow_negative_numbers = true)]
    pub tolerance: Option<f64>,
    /// Write the comparison table to this path instead of stdout.
    #[arg(long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// JSON file supplying defaults for any of the other flags.
    #[arg(long = "config", value_name = "PATH")]
    pub config: Option<PathBuf>,
}
