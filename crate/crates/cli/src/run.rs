//! The four command handlers and the top-level dispatch.

use std::path::PathBuf;

use su11::analytic::{build_report, InterferometerConfig};
use su11::fock;

use crate::args::{Cli, Command, FigureArgs, OracleCheckArgs, SensitivityArgs, SweepArgs};
use crate::config::{self, FileConfig, OutputFormat};
use crate::format;
use crate::presets::{sweep_reports, Axis, Figure};
use crate::{emit, CliError};

/// Bounds inside which the number-basis oracle is trustworthy at the
/// default cutoff; beyond them the truncated grid can no longer hold the
/// state and every run would abort on its own diagnostics anyway.
pub const ORACLE_MAX_G: f64 = 0.6;
pub const ORACLE_MAX_R: f64 = 0.6;
pub const ORACLE_MAX_NTH: f64 = 1.0;

/// Default comparison grid for `oracle-check`: 500 points inside the
/// tractable region, mixing zero and nonzero seeds and phases.
pub const DEFAULT_ORACLE_G: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.5];
pub const DEFAULT_ORACLE_R: [f64; 5] = [0.0, 0.125, 0.25, 0.375, 0.5];
pub const DEFAULT_ORACLE_NTH: [f64; 4] = [0.0, 0.25, 0.5, 0.75];
pub const DEFAULT_ORACLE_PHI: [f64; 5] = [0.0, 0.3, 0.7, 1.2, 2.0];

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sensitivity(args) => cmd_sensitivity(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Figure(args) => cmd_figure(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
    }
}

fn require_g(g: Option<f64>) -> Result<f64, CliError> {
    g.ok_or_else(|| CliError::Usage("--g is required (as a flag or in the config file)".into()))
}

fn cmd_sensitivity(args: SensitivityArgs) -> Result<(), CliError> {
    let file = config::load(args.config.as_deref())?;
    let g = require_g(args.g.or(file.g))?;
    let r = args.r.or(file.r).unwrap_or(0.0);
    let n_th = args.n_th.or(file.n_th).unwrap_or(0.0);
    let phi = args.phi.or(file.phi).unwrap_or(0.0);
    let output = resolve_output(args.output, &file);
    let fmt = OutputFormat::parse(args.format.or(file.format).as_deref())?;

    let cfg = InterferometerConfig::new(g, r, n_th, phi)?;
    let report = build_report(&cfg)?;
    let text = match fmt {
        OutputFormat::Csv => format::render_report_csv(&report),
        OutputFormat::Json => format::render_report_json(&report),
    };
    emit(output.as_ref(), &text)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let file = config::load(args.config.as_deref())?;
    let output = resolve_output(args.output, &file);
    let axis_name = args
        .axis
        .or(file.axis)
        .ok_or_else(|| CliError::Usage("--axis is required for sweep".into()))?;
    let axis = Axis::parse(&axis_name)?;

    // An explicit flag for the swept parameter contradicts the sweep; a
    // config-file value for it is silently superseded by the grid.
    let conflicting = match axis {
        Axis::G => args.g.is_some(),
        Axis::R => args.r.is_some(),
        Axis::NTh => args.n_th.is_some(),
        Axis::Phi => args.phi.is_some(),
    };
    if conflicting {
        return Err(CliError::Usage(format!(
            "--{} conflicts with --axis {}: the sweep grid supplies that value",
            axis.name().replace('_', "-"),
            axis.name()
        )));
    }

    let min = args
        .min
        .or(file.min)
        .ok_or_else(|| CliError::Usage("--min is required for sweep".into()))?;
    let max = args
        .max
        .or(file.max)
        .ok_or_else(|| CliError::Usage("--max is required for sweep".into()))?;
    let steps = args
        .steps
        .or(file.steps)
        .ok_or_else(|| CliError::Usage("--steps is required for sweep".into()))?;
    if !(min.is_finite() && max.is_finite() && min <= max) {
        return Err(CliError::Usage(format!(
            "sweep bounds must be finite with min <= max, got [{min}, {max}]"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }

    let g = match axis {
        Axis::G => 0.0, // placeholder, the grid supplies g
        _ => require_g(args.g.or(file.g))?,
    };
    let r = args.r.or(file.r).unwrap_or(0.0);
    let n_th = args.n_th.or(file.n_th).unwrap_or(0.0);
    let phi = args.phi.or(file.phi).unwrap_or(0.0);
    let fmt = OutputFormat::parse(args.format.or(file.format).as_deref())?;

    let grid = crate::presets::linspace(min, max, steps);
    let rows = sweep_reports(axis, &grid, (g, r, n_th, phi))?;
    let text = match fmt {
        OutputFormat::Csv => format::render_sweep_csv(&rows),
        OutputFormat::Json => format::render_sweep_json(&rows),
    };
    emit(output.as_ref(), &text)
}

fn cmd_figure(args: FigureArgs) -> Result<(), CliError> {
    let fig = Figure::parse(&args.id).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown preset '{}': expected one of fig2, fig3, fig4, fig5, fig6",
            args.id
        ))
    })?;
    let rows = fig.rows()?;
    emit(args.output.as_ref(), &format::render_sweep_csv(&rows))
}

fn pinned_axis(pin: Option<f64>, default: &[f64]) -> Vec<f64> {
    match pin {
        Some(value) => vec![value],
        None => default.to_vec(),
    }
}

fn cmd_oracle_check(args: OracleCheckArgs) -> Result<(), CliError> {
    let file = config::load(args.config.as_deref())?;
    let cutoff = args.cutoff.or(file.cutoff).unwrap_or(48);
    let eps_trunc = args.eps_trunc.or(file.eps_trunc).unwrap_or(1e-9);
    let tolerance = args.tolerance.or(file.tolerance).unwrap_or(1e-6);
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(CliError::Usage(format!(
            "--tolerance must be positive and finite, got {tolerance}"
        )));
    }
    let output = resolve_output(args.output, &file);

    let gs = pinned_axis(args.g.or(file.g), &DEFAULT_ORACLE_G);
    let rs = pinned_axis(args.r.or(file.r), &DEFAULT_ORACLE_R);
    let n_ths = pinned_axis(args.n_th.or(file.n_th), &DEFAULT_ORACLE_NTH);
    let phis = pinned_axis(args.phi.or(file.phi), &DEFAULT_ORACLE_PHI);

    for (name, values, limit) in [
        ("g", &gs, ORACLE_MAX_G),
        ("r", &rs, ORACLE_MAX_R),
        ("n_th", &n_ths, ORACLE_MAX_NTH),
    ] {
        for &v in values {
            if !v.is_finite() || v > limit {
                return Err(CliError::Domain(format!(
                    "{name} = {v} is outside the oracle-tractable range \
                     (g <= {ORACLE_MAX_G}, r <= {ORACLE_MAX_R}, n_th <= {ORACLE_MAX_NTH})"
                )));
            }
        }
    }

    let rows = fock::compare_parity_on_grid(&gs, &rs, &n_ths, &phis, cutoff, eps_trunc)?;
    emit(output.as_ref(), &format::render_comparison_csv(&rows))?;

    let max_diff = rows.iter().fold(0.0f64, |acc, row| acc.max(row.abs_diff));
    eprintln!(
        "checked {} points at cutoff {}: max |closed form - oracle| = {:.3e}, tolerance {:.1e}",
        rows.len(),
        cutoff,
        max_diff,
        tolerance
    );
    if max_diff < tolerance {
        Ok(())
    } else {
        Err(CliError::Domain(format!(
            "oracle discrepancy {max_diff:.3e} is not below tolerance {tolerance:.1e}"
        )))
    }
}

fn resolve_output(flag: Option<PathBuf>, file: &FileConfig) -> Option<PathBuf> {
    flag.or_else(|| file.output.as_ref().map(PathBuf::from))
}
