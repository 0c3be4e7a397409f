use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::config::{Format, RunConfig, Subcommand};
use crate::boundary::{default_fit_samples, xi_f_amplitude_analytic, xi_f_analytic, xi_f_from_fit_with, BosonGasParams};
use crate::bulk::{BulkParams, GeometryNote};
use crate::duality::{evaluate, match_parameters, verify_duality, SignFlag};
use crate::error::{Error, Result};
use crate::verify::{run_suite, Check, VerifyOptions};
use crate::volume::{
    background_volume, complexity, regularize, volume_exact, volume_series_z4, volume_w_form, xi_f_holo_z4,
    VolumeMode,
};

/// Sweep CSV columns, in order.
pub const SWEEP_COLUMNS: [&str; 12] = [
    "index",
    "axis_value",
    "xi_f_analytic",
    "xi_f_fitted",
    "xi_f_holo",
    "v_exact",
    "v_series",
    "v_background",
    "regularized_complexity",
    "matched_n",
    "matched_beta_sq_over_q",
    "duality_residual",
];

pub struct Outcome {
    pub status: i32,
    /// Text for standard output.
    pub stdout: String,
    pub written: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => sig12(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// Twelve significant digits in scientific notation, trailing zeros trimmed.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("scientific format");
    let mantissa = if mantissa.contains('.') { mantissa.trim_end_matches('0').trim_end_matches('.') } else { mantissa };
    format!("{mantissa}e{exp}")
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn single(pairs: Vec<(&'static str, Cell)>) -> Self {
        let (columns, row) = pairs.into_iter().unzip();
        Table { columns, rows: vec![row] }
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::json)).collect()))
                .collect(),
        )
    }
}

struct Artifact {
    table: Table,
    /// Structured results for JSON; defaults to the table rows.
    results: Option<Value>,
    flags: Vec<Value>,
    invariants: Vec<Check>,
}

/// A computed value whose preconditions may not hold at this point
/// (z ≠ 4, ξ ≥ 0, ...); such values are left empty rather than failing the run.
fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Constraint { .. } | Error::Domain { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn check(name: &str, deviation: f64, tolerance: f64) -> Check {
    Check { name: name.into(), deviation, tolerance, passed: deviation <= tolerance, detail: String::new() }
}

fn note_name(n: &GeometryNote) -> String {
    match n {
        GeometryNote::ExponentMismatch { .. } => "exponent-mismatch".into(),
        GeometryNote::ExponentUndefined => "exponent-undefined".into(),
        GeometryNote::NotAsymptoticallyAdS => "not-asymptotically-ads".into(),
    }
}

fn flag_name(f: &SignFlag) -> &'static str {
    match f {
        SignFlag::NegativeN => "negative-n",
        SignFlag::NegativeBetaSqOverQ => "negative-beta-sq-over-q",
        SignFlag::NegativeXi => "negative-xi",
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let artifact = match config.subcommand {
        Subcommand::Boundary => boundary(config)?,
        Subcommand::Bulk => bulk(config)?,
        Subcommand::Match => duality(config)?,
        Subcommand::Sweep => sweep(config)?,
        Subcommand::Verify => verify(config)?,
    };
    let failed = artifact.invariants.iter().any(|c| !c.passed);
    let status = if config.subcommand == Subcommand::Verify && failed { 2 } else { 0 };

    let body = match config.format {
        Format::Csv => render_csv(config, &artifact),
        Format::Json => render_json(config, &artifact),
    };
    let mut stdout = String::new();
    let mut written = Vec::new();
    if config.subcommand == Subcommand::Verify {
        stdout.push_str(&crate::verify::Suite { checks: artifact.invariants.clone() }.table());
        stdout.push_str(if failed { "verify: FAILED\n" } else { "verify: all checks passed\n" });
    }
    match &config.out {
        Some(dir) => {
            let path = dir.join(format!("{}.{}", config.subcommand.name(), config.format));
            std::fs::write(&path, body)?;
            written.push(path);
            if config.subcommand == Subcommand::Sweep {
                written.extend(write_plot_data(config, &artifact.table)?);
            }
        }
        None if config.subcommand != Subcommand::Verify => stdout.push_str(&body),
        None => {}
    }
    Ok(Outcome { status, stdout, written })
}

fn render_csv(config: &RunConfig, a: &Artifact) -> String {
    let mut out = format!("# lifshitz-fidelity {}\n", config.subcommand.name());
    for (k, v) in config.echo() {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out.push_str(&a.table.columns.join(","));
    out.push('\n');
    for row in &a.table.rows {
        out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn render_json(config: &RunConfig, a: &Artifact) -> String {
    let config_section: Map<String, Value> = config.echo().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let doc = json!({
        "subcommand": config.subcommand.name(),
        "config": config_section,
        "results": a.results.clone().unwrap_or_else(|| a.table.json_rows()),
        "flags": a.flags,
        "invariants": a.invariants,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

fn write_plot_data(config: &RunConfig, table: &Table) -> Result<Vec<PathBuf>> {
    let dir = config.out.as_ref().expect("called with an output directory");
    let mut written = Vec::new();
    for (j, col) in table.columns.iter().enumerate().skip(2) {
        let mut body = format!("# axis_value {col}\n");
        for row in &table.rows {
            if let (Cell::Num(x), Cell::Num(y)) = (&row[1], &row[j]) {
                body.push_str(&format!("{} {}\n", sig12(*x), sig12(*y)));
            }
        }
        let path = dir.join(format!("plot_{col}.dat"));
        std::fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

fn boundary(config: &RunConfig) -> Result<Artifact> {
    let p = &config.boson;
    let analytic = xi_f_analytic(p)?;
    let fit = xi_f_from_fit_with(p, &default_fit_samples(p.field), &config.grid)?;
    let residual = rel(fit.c_sq, analytic);
    let table = Table::single(vec![
        ("xi_f_analytic", Cell::Num(analytic)),
        ("xi_f_fitted", Cell::Num(fit.c_sq)),
        ("residual", Cell::Num(residual)),
        ("xi_f_amplitude_analytic", Cell::Num(xi_f_amplitude_analytic(p)?)),
        ("xi_f_amplitude_fitted", Cell::Num(fit.c_amp)),
        ("fit_residual", Cell::Num(fit.residual_sq)),
    ]);
    Ok(Artifact {
        table,
        results: None,
        flags: Vec::new(),
        invariants: vec![
            check("boundary.xif_reproduction", residual, 1e-5),
            check("boundary.convention_bridge", rel(fit.c_sq, 2.0 * fit.c_amp), 1e-6),
        ],
    })
}

struct BulkRow {
    v_exact: f64,
    v_series: Option<f64>,
    v_background: f64,
    regularized: f64,
    xi_f_holo: Option<f64>,
}

fn bulk_row(p: &BulkParams, ratio: f64, config: &RunConfig) -> Result<(BulkRow, f64)> {
    let r_inf = ratio * p.horizon;
    let exact = volume_exact(p, r_inf, &config.quadrature)?;
    let background = background_volume(p, r_inf, &config.quadrature)?;
    let regularized = regularize(&complexity(&exact, p)?, &complexity(&background, p)?)?;
    let row = BulkRow {
        v_exact: exact.value,
        v_series: optional(volume_series_z4(p, 1.0 / ratio))?.map(|v| v.value),
        v_background: background.value,
        regularized,
        xi_f_holo: optional(xi_f_holo_z4(p))?,
    };
    Ok((row, exact.error_estimate))
}

fn bulk(config: &RunConfig) -> Result<Artifact> {
    let p = &config.bulk;
    let (row, error) = bulk_row(p, config.rinf_ratio, config)?;
    let w_form = volume_w_form(p, 1.0 / config.rinf_ratio, VolumeMode::FullB, &config.quadrature)?;
    let notes = p.diagnostics();
    let table = Table::single(vec![
        ("r_inf", Cell::Num(config.rinf_ratio * p.horizon)),
        ("epsilon", Cell::Num(1.0 / config.rinf_ratio)),
        ("v_exact", Cell::Num(row.v_exact)),
        ("v_exact_error", Cell::Num(error)),
        ("v_series", row.v_series.into()),
        ("v_background", Cell::Num(row.v_background)),
        ("regularized_complexity", Cell::Num(row.regularized)),
        ("xi_f_holo", row.xi_f_holo.into()),
        ("flags", Cell::Text(notes.iter().map(note_name).collect::<Vec<_>>().join(";"))),
    ]);
    Ok(Artifact {
        table,
        results: None,
        flags: notes.iter().map(|n| serde_json::to_value(n).expect("note serializes")).collect(),
        invariants: vec![check("volume.change_of_variables", rel(row.v_exact, w_form.value), 1e-8)],
    })
}

fn duality(config: &RunConfig) -> Result<Artifact> {
    let report = verify_duality(&config.bulk)?;
    let table = Table::single(vec![
        ("matched_n", Cell::Num(report.matched.particles)),
        ("matched_beta_sq_over_q", Cell::Num(report.matched.beta_sq_over_q)),
        ("xi_f_bulk", Cell::Num(report.xi_f_bulk)),
        ("xi_f_boundary", Cell::Num(report.xi_f_boundary)),
        ("relative_residual", Cell::Num(report.relative_residual)),
        ("flags", Cell::Text(report.flags.iter().map(flag_name).collect::<Vec<_>>().join(";"))),
    ]);
    Ok(Artifact {
        table,
        results: Some(serde_json::to_value(&report).expect("report serializes")),
        flags: report.flags.iter().map(|f| json!(flag_name(f))).collect(),
        invariants: vec![check("duality.dictionary_identity", report.relative_residual, 1e-10)],
    })
}

fn sweep_row(config: &RunConfig, index: usize, value: f64) -> Result<Vec<Cell>> {
    let axis = config.sweep.as_ref().expect("validated sweep");
    let (boson, bulk, ratio): (BosonGasParams, BulkParams, f64) = config.at(&axis.name, value);
    let analytic = xi_f_analytic(&boson)?;
    let fitted = xi_f_from_fit_with(&boson, &default_fit_samples(boson.field), &config.grid)?.c_sq;
    let (row, _) = bulk_row(&bulk, ratio, config)?;
    let matched = optional(match_parameters(&bulk))?;
    let residual = match matched {
        Some(m) if row.xi_f_holo.is_some() => Some(evaluate(&bulk, m)?.relative_residual),
        _ => None,
    };
    Ok(vec![
        Cell::Int(index as u64),
        Cell::Num(value),
        Cell::Num(analytic),
        Cell::Num(fitted),
        row.xi_f_holo.into(),
        Cell::Num(row.v_exact),
        row.v_series.into(),
        Cell::Num(row.v_background),
        Cell::Num(row.regularized),
        matched.map(|m| m.particles).into(),
        matched.map(|m| m.beta_sq_over_q).into(),
        residual.into(),
    ])
}

fn sweep(config: &RunConfig) -> Result<Artifact> {
    let axis = config.sweep.as_ref().expect("validated sweep");
    let values = axis.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", config.workers)))?;
    let rows = pool.install(|| {
        values.par_iter().enumerate().map(|(i, &v)| sweep_row(config, i, v)).collect::<Result<Vec<_>>>()
    })?;
    Ok(Artifact {
        table: Table { columns: SWEEP_COLUMNS.to_vec(), rows },
        results: None,
        flags: Vec::new(),
        invariants: Vec::new(),
    })
}

fn verify(config: &RunConfig) -> Result<Artifact> {
    let suite = run_suite(&VerifyOptions {
        seed: config.seed,
        inject_fault: config.inject_fault.clone(),
        quadrature: config.quadrature,
        grid: config.grid,
    })?;
    let table = Table {
        columns: vec!["check", "deviation", "tolerance", "status"],
        rows: suite
            .checks
            .iter()
            .map(|c| {
                vec![
                    Cell::Text(c.name.clone()),
                    Cell::Num(c.deviation),
                    Cell::Num(c.tolerance),
                    Cell::Text(if c.passed { "pass" } else { "fail" }.into()),
                ]
            })
            .collect(),
    };
    let failures = suite.failures().count();
    Ok(Artifact {
        table,
        results: Some(json!({ "checks": suite.checks.len(), "failures": failures, "passed": failures == 0 })),
        flags: Vec::new(),
        invariants: suite.checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(sig12(0.125), "1.25e-1");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-2.0), "-2e0");
        assert_eq!(sig12(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(sig12(123456.0), "1.23456e5");
    }

    #[test]
    fn optional_keeps_numerical_failures() {
        assert_eq!(optional::<f64>(Err(Error::domain("x", "y"))).unwrap(), None);
        assert!(optional::<f64>(Err(Error::Convergence { op: "x", detail: String::new() })).is_err());
    }
}
