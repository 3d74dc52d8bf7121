//! Sweep grids, axis plumbing, and the five bundled presets.

use su11::analytic::{build_report, InterferometerConfig, SensitivityReport};

use crate::CliError;

/// Which of the four knobs a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    G,
    R,
    NTh,
    Phi,
}

impl Axis {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "g" => Ok(Axis::G),
            "r" => Ok(Axis::R),
            "n_th" => Ok(Axis::NTh),
            "phi" => Ok(Axis::Phi),
            other => Err(CliError::Usage(format!(
                "unknown axis '{other}': expected g, r, n_th, or phi"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Axis::G => "g",
            Axis::R => "r",
            Axis::NTh => "n_th",
            Axis::Phi => "phi",
        }
    }
}

/// One sweep row: the grid value and the full report at that setting.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub axis_value: f64,
    pub report: SensitivityReport,
}

/// Uniform grid that emits its endpoints exactly: the first value is `min`
/// bit for bit and the last is `max`, no accumulated rounding.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2, "a grid needs at least its two endpoints");
    let h = (max - min) / (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            if k == 0 {
                min
            } else if k == steps - 1 {
                max
            } else {
                min + k as f64 * h
            }
        })
        .collect()
}

/// Two uniform segments sharing one interior anchor point, which is emitted
/// exactly. Used by the presets so that settings shared between different
/// presets land on bit-identical parameter values.
pub fn anchored_grid(
    min: f64,
    anchor: f64,
    max: f64,
    lo_intervals: usize,
    hi_intervals: usize,
) -> Vec<f64> {
    let lo = linspace(min, anchor, lo_intervals + 1);
    let hi = linspace(anchor, max, hi_intervals + 1);
    lo.into_iter().chain(hi.into_iter().skip(1)).collect()
}

fn with_axis(axis: Axis, value: f64, fixed: (f64, f64, f64, f64)) -> (f64, f64, f64, f64) {
    let (g, r, n_th, phi) = fixed;
    match axis {
        Axis::G => (value, r, n_th, phi),
        Axis::R => (g, value, n_th, phi),
        Axis::NTh => (g, r, value, phi),
        Axis::Phi => (g, r, n_th, value),
    }
}

/// Evaluates the full report at every grid point, in grid order.
pub fn sweep_reports(
    axis: Axis,
    grid: &[f64],
    fixed: (f64, f64, f64, f64),
) -> Result<Vec<SweepRow>, CliError> {
    grid.iter()
        .map(|&value| {
            let (g, r, n_th, phi) = with_axis(axis, value, fixed);
            let row = InterferometerConfig::new(g, r, n_th, phi)
                .and_then(|cfg| build_report(&cfg))
                .map_err(|e| CliError::Domain(format!("at {} = {value}: {e}", axis.name())))?;
            Ok(SweepRow {
                axis_value: value,
                report: row,
            })
        })
        .collect()
}

/// The five bundled presets. Each fixes three knobs at a documented
/// reference setting, sweeps the fourth at zero working phase, and uses a
/// grid spacing chosen so the settings shared between presets (g = 2,
/// r = 2, n_th = 20) land exactly on grid points; rows evaluated at a
/// shared setting are then bit-identical across presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl Figure {
    pub const ALL: [Figure; 5] = [
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6,
    ];

    pub fn parse(id: &str) -> Option<Self> {
        match id {
            "fig2" => Some(Figure::Fig2),
            "fig3" => Some(Figure::Fig3),
            "fig4" => Some(Figure::Fig4),
            "fig5" => Some(Figure::Fig5),
            "fig6" => Some(Figure::Fig6),
            _ => None,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
        }
    }

    pub fn axis(&self) -> Axis {
        match self {
            Figure::Fig2 | Figure::Fig5 => Axis::G,
            Figure::Fig3 | Figure::Fig4 => Axis::NTh,
            Figure::Fig6 => Axis::R,
        }
    }

    /// The three fixed knobs as (g, r, n_th); the swept slot holds a
    /// placeholder zero that [`sweep_reports`] overwrites, and phi is 0.
    pub fn fixed(&self) -> (f64, f64, f64) {
        match self {
            Figure::Fig2 => (0.0, 0.0, 0.0),
            Figure::Fig3 => (2.0, 0.0, 0.0),
            Figure::Fig4 => (2.0, 2.0, 0.0),
            Figure::Fig5 => (0.0, 2.0, 20.0),
            Figure::Fig6 => (2.0, 0.0, 20.0),
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        match self {
            // Gain sweep, vacuum seeds. Spacing 1/60 puts g = 2 on the grid.
            Figure::Fig2 => anchored_grid(0.05, 2.0, 3.0, 117, 60),
            // Thermal sweeps; both endpoints are reference settings.
            Figure::Fig3 | Figure::Fig4 => linspace(0.0, 20.0, 200),
            // Gain sweep at heavy seeding. Spacing 1/80, g = 2 on the grid.
            Figure::Fig5 => anchored_grid(0.5, 2.0, 3.0, 120, 80),
            // Squeezing sweep. Spacing 1/66, r = 2 on the grid.
            Figure::Fig6 => anchored_grid(0.0, 2.0, 3.0, 132, 66),
        }
    }

    pub fn rows(&self) -> Result<Vec<SweepRow>, CliError> {
        let (g, r, n_th) = self.fixed();
        sweep_reports(self.axis(), &self.grid(), (g, r, n_th, 0.0))
    }
}
