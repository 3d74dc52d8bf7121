//! Deterministic number formatting and the CSV/JSON emitters.
//!
//! Every number is rendered with 12 significant digits, plain decimal
//! within [1e-4, 1e12) and scientific outside, so repeated runs produce
//! byte-identical files. JSON output carries the same rounded values: each
//! number is parsed back from its rendered form before being serialized,
//! which keeps the two formats numerically interchangeable.

use serde_json::{Map, Value};
use su11::analytic::SensitivityReport;
use su11::fock::ParityComparison;

use crate::presets::SweepRow;

/// 12-significant-digit rendering, stable across runs and platforms.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let a = x.abs();
    if !(1e-4..1e12).contains(&a) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exponent(a)).max(0) as usize;
    let text = format!("{x:.decimals$}");
    // Rounding can carry into the next decade ("0.99...9" would come out as
    // "1.000000000000", one digit too many). Rerender with one fewer
    // decimal when that happens.
    let back: f64 = text.parse().expect("rendered decimal parses back");
    if exponent(back.abs()) == exponent(a) {
        text
    } else if decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        format!("{x:.11e}")
    }
}

fn exponent(a: f64) -> i32 {
    format!("{a:e}")
        .split('e')
        .nth(1)
        .expect("float formatting always yields an exponent")
        .parse()
        .expect("float exponent parses")
}

/// The value a reader of our output will see: rendered, then parsed back.
fn rounded(x: f64) -> f64 {
    format_value(x)
        .parse()
        .expect("rendered numbers parse back")
}

fn json_number(x: f64) -> Value {
    Value::from(rounded(x))
}

const REPORT_FIELDS: [&str; 13] = [
    "g",
    "r",
    "n_th",
    "phi",
    "delta_phi",
    "parity",
    "delta_parity",
    "slope",
    "n_bar",
    "snl",
    "hl",
    "n_opa",
    "n_s",
];

fn report_values(report: &SensitivityReport) -> [f64; 13] {
    [
        report.g,
        report.r,
        report.n_th,
        report.phi,
        report.delta_phi,
        report.parity,
        report.delta_parity,
        report.slope,
        report.n_bar,
        report.snl,
        report.hl,
        report.n_opa,
        report.n_s,
    ]
}

pub fn render_report_csv(report: &SensitivityReport) -> String {
    let row: Vec<String> = report_values(report)
        .iter()
        .map(|&v| format_value(v))
        .collect();
    format!("{}\n{}\n", REPORT_FIELDS.join(","), row.join(","))
}

pub fn render_report_json(report: &SensitivityReport) -> String {
    let mut map = Map::new();
    for (name, value) in REPORT_FIELDS.iter().zip(report_values(report)) {
        map.insert((*name).to_string(), json_number(value));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes");
    text.push('\n');
    text
}

pub const SWEEP_HEADER: &str = "axis_value,delta_phi,snl,hl,parity,n_bar";

fn sweep_values(row: &SweepRow) -> [f64; 6] {
    [
        row.axis_value,
        row.report.delta_phi,
        row.report.snl,
        row.report.hl,
        row.report.parity,
        row.report.n_bar,
    ]
}

pub fn render_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = sweep_values(row).iter().map(|&v| format_value(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn render_sweep_json(rows: &[SweepRow]) -> String {
    let names = SWEEP_HEADER.split(',');
    let array: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut map = Map::new();
            for (name, value) in names.clone().zip(sweep_values(row)) {
                map.insert(name.to_string(), json_number(value));
            }
            Value::Object(map)
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&Value::Array(array)).expect("sweep serializes");
    text.push('\n');
    text
}

pub const COMPARISON_HEADER: &str = "g,r,n_th,phi,closed_form,oracle,abs_diff";

pub fn render_comparison_csv(rows: &[ParityComparison]) -> String {
    let mut out = String::with_capacity(48 * (rows.len() + 1));
    out.push_str(COMPARISON_HEADER);
    out.push('\n');
    for row in rows {
        let cells = [
            row.g,
            row.r,
            row.n_th,
            row.phi,
            row.closed_form,
            row.oracle,
            row.abs_diff,
        ];
        let rendered: Vec<String> = cells.iter().map(|&v| format_value(v)).collect();
        out.push_str(&rendered.join(","));
        out.push('\n');
    }
    out
}
