//! Run configuration: a flat key/value block assembled from an optional file
//! and command-line overrides, then resolved into typed parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{json, Value};

use crate::boundary::{BosonGasParams, GridSpec};
use crate::bulk::BulkParams;
use crate::error::{Error, Result};
use crate::quadrature::{QuadratureSpec, Scheme};
use crate::verify::CHECK_NAMES;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Boundary,
    Bulk,
    Match,
    Sweep,
    Verify,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Boundary => "boundary",
            Subcommand::Bulk => "bulk",
            Subcommand::Match => "match",
            Subcommand::Sweep => "sweep",
            Subcommand::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format `{other}`, expected csv or json"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Parameters a sweep may vary.
pub const SWEEP_AXES: &[&str] = &[
    "q", "m", "H", "beta", "k", "L", "xi", "Q", "V0", "z", "r_plus", "G", "R", "rinf_ratio",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub name: String,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub log: bool,
}

impl SweepAxis {
    /// Axis values in index order; endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.from;
                }
                if i == n - 1 {
                    return self.to;
                }
                let t = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.from.ln() + t * (self.to.ln() - self.from.ln())).exp()
                } else {
                    self.from + t * (self.to - self.from)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub boson: BosonGasParams,
    pub bulk: BulkParams,
    /// `r_∞ / r₊` for volume evaluations.
    pub rinf_ratio: f64,
    pub quadrature: QuadratureSpec,
    pub grid: GridSpec,
    pub sweep: Option<SweepAxis>,
    pub seed: u64,
    pub inject_fault: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    /// Whether `Λ` and `R` were given explicitly rather than derived from L.
    explicit_lambda: bool,
    explicit_radius: bool,
}

/// Canonical key for a config or flag name.
fn canonical(key: &str) -> &str {
    match key {
        "Q̃" | "Qt" | "q_tilde" => "Q",
        "Λ" => "Lambda",
        "ξ" => "xi",
        "β" => "beta",
        "r₊" => "r_plus",
        other => other,
    }
}

const KEYS: &[&str] = &[
    "N", "q", "m", "H", "beta", "k", "L", "Lambda", "xi", "Q", "V0", "z", "r_plus", "r0", "G", "R", "gamma",
    "lambda", "rinf_ratio", "scheme", "panels", "exponent", "levels", "tolerance", "grid_points",
    "grid_half_width", "grid_levels", "grid_tolerance", "axis", "from", "to", "points", "log", "seed",
    "inject_fault",
];

/// Ordered key/value block; later insertions win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues(BTreeMap<String, String>);

impl KeyValues {
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        let key = canonical(key);
        if !KEYS.contains(&key) {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
        self.0.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn merge(&mut self, other: KeyValues) {
        self.0.extend(other.0);
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn num(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Config(format!("`{key}` must be a finite number, got `{s}`"))),
        }
    }

    fn count(&self, key: &str, default: u64) -> Result<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => {
                let v = self.num(key, 0.0)?;
                if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
                    return Err(Error::Config(format!("`{key}` must be a non-negative integer, got `{s}`")));
                }
                Ok(v as u64)
            }
        }
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.get(key) {
            None => Ok(false),
            Some("true") | Some("1") | Some("") => Ok(true),
            Some("false") | Some("0") => Ok(false),
            Some(s) => Err(Error::Config(format!("`{key}` must be true or false, got `{s}`"))),
        }
    }

    /// Parse a config file: flat TOML, or an artifact written by a previous run
    /// (CSV with `# key = value` header lines, or a JSON report).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            let section = doc
                .get("config")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Config(format!("{}: no `config` section", path.display())))?;
            let mut kv = KeyValues::default();
            for (k, v) in section {
                let s = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                kv.set(k, s)?;
            }
            return Ok(kv);
        }
        let body = if trimmed.starts_with('#') {
            text.lines()
                .take_while(|l| l.starts_with('#'))
                .map(|l| l.trim_start_matches('#').trim())
                .filter(|l| l.contains('='))
                .collect::<Vec<_>>()
                .join("\n")
        } else {
            text
        };
        let table: toml::Table =
            toml::from_str(&body).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut kv = KeyValues::default();
        for (k, v) in table {
            let s = match v {
                toml::Value::String(s) => s,
                toml::Value::Integer(i) => i.to_string(),
                toml::Value::Float(f) => f.to_string(),
                toml::Value::Boolean(b) => b.to_string(),
                other => return Err(Error::Config(format!("`{k}` must be a scalar, got {other}"))),
            };
            kv.set(&k, s)?;
        }
        Ok(kv)
    }
}

/// Settings that only come from the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
}

impl RunConfig {
    pub fn resolve(subcommand: Subcommand, kv: &KeyValues, output: OutputOptions) -> Result<Self> {
        let particles = kv.count("N", 1)?;
        let boson = BosonGasParams {
            particles: particles as u32,
            charge: kv.num("q", 1.0)?,
            mass: kv.num("m", 1.0)?,
            field: kv.num("H", 1.0)?,
            beta: kv.num("beta", 0.0)?,
            k: kv.num("k", 0.0)?,
        };

        let l = kv.num("L", 1.0)?;
        let explicit_lambda = kv.get("Lambda").is_some();
        let explicit_radius = kv.get("R").is_some();
        let bulk = BulkParams {
            cosmological_constant: kv.num("Lambda", -3.0 / (l * l))?,
            ads_radius: l,
            xi: kv.num("xi", -0.1)?,
            charge: kv.num("Q", 1.0)?,
            potential: kv.num("V0", 0.0)?,
            z: kv.num("z", 4.0)?,
            horizon: kv.num("r_plus", 1.0)?,
            time_scale: kv.num("r0", 1.0)?,
            newton: kv.num("G", 1.0)?,
            complexity_radius: kv.num("R", l)?,
            dilaton_gamma: kv.num("gamma", 0.0)?,
            dilaton_lambda: kv.num("lambda", 0.0)?,
        };

        let d = QuadratureSpec::default();
        let quadrature = QuadratureSpec {
            scheme: kv.get("scheme").map(str::parse::<Scheme>).transpose()?.unwrap_or(d.scheme),
            panels: kv.count("panels", d.panels as u64)? as usize,
            endpoint_exponent: kv.num("exponent", d.endpoint_exponent)?,
            refinement_levels: kv.count("levels", d.refinement_levels as u64)? as usize,
            tolerance: kv.num("tolerance", d.tolerance)?,
        };
        let g = GridSpec::default();
        let grid = GridSpec {
            half_width: kv.num("grid_half_width", g.half_width)?,
            points: kv.count("grid_points", g.points as u64)? as usize,
            refinement_levels: kv.count("grid_levels", g.refinement_levels as u64)? as usize,
            tolerance: kv.num("grid_tolerance", g.tolerance)?,
        };

        let sweep = match kv.get("axis") {
            Some(axis) => Some(SweepAxis {
                name: canonical(axis).to_string(),
                from: kv.num("from", f64::NAN)?,
                to: kv.num("to", f64::NAN)?,
                points: kv.count("points", 10)? as usize,
                log: kv.flag("log")?,
            }),
            None => None,
        };

        let config = RunConfig {
            subcommand,
            boson,
            bulk,
            rinf_ratio: kv.num("rinf_ratio", 100.0)?,
            quadrature,
            grid,
            sweep,
            seed: kv.count("seed", 0x5eed)?,
            inject_fault: kv.get("inject_fault").filter(|s| !s.is_empty()).map(str::to_string),
            out: output.out,
            format: output.format,
            workers: output.workers,
            explicit_lambda,
            explicit_radius,
        };
        config.validate(kv)?;
        Ok(config)
    }

    fn validate(&self, kv: &KeyValues) -> Result<()> {
        let invalid = |e: Error| Error::Config(e.to_string());
        if self.workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        self.quadrature.validate().map_err(invalid)?;
        if !(self.rinf_ratio > 1.0) {
            return Err(Error::Config(format!("rinf_ratio must exceed 1, got {}", self.rinf_ratio)));
        }
        if let Some(name) = &self.inject_fault {
            if self.subcommand != Subcommand::Verify {
                return Err(Error::Config("inject_fault only applies to verify".into()));
            }
            if !CHECK_NAMES.contains(&name.as_str()) {
                return Err(Error::Config(format!("unknown check `{name}` for fault injection")));
            }
        }
        match self.subcommand {
            Subcommand::Boundary => self.boson.validate("config").map_err(invalid)?,
            Subcommand::Bulk | Subcommand::Match => self.bulk.validate("config").map_err(invalid)?,
            Subcommand::Sweep => {
                let axis = self
                    .sweep
                    .as_ref()
                    .ok_or_else(|| Error::Config("sweep needs --axis, --from, --to and --points".into()))?;
                if !SWEEP_AXES.contains(&axis.name.as_str()) {
                    return Err(Error::Config(format!(
                        "`{}` is not a sweepable parameter; expected one of {}",
                        axis.name,
                        SWEEP_AXES.join(", ")
                    )));
                }
                if kv.get("from").is_none() || kv.get("to").is_none() {
                    return Err(Error::Config("sweep needs both --from and --to".into()));
                }
                if axis.points < 2 {
                    return Err(Error::Config(format!("sweep needs at least 2 points, got {}", axis.points)));
                }
                if axis.from == axis.to {
                    return Err(Error::Config(format!("degenerate sweep range [{}, {}]", axis.from, axis.to)));
                }
                if axis.log && !(axis.from > 0.0 && axis.to > 0.0) {
                    return Err(Error::Config("log spacing needs a positive range".into()));
                }
                for v in axis.values() {
                    let (boson, bulk, ratio) = self.at(&axis.name, v);
                    boson.validate("config").map_err(invalid)?;
                    bulk.validate("config").map_err(invalid)?;
                    if !(ratio > 1.0) {
                        return Err(Error::Config(format!("rinf_ratio must exceed 1, got {ratio}")));
                    }
                }
            }
            Subcommand::Verify => {}
        }
        if let Some(dir) = &self.out {
            std::fs::create_dir_all(dir)
                .map_err(|e| Error::Config(format!("output directory {} is not writable: {e}", dir.display())))?;
            let meta = std::fs::metadata(dir).map_err(|e| Error::Config(e.to_string()))?;
            if meta.permissions().readonly() {
                return Err(Error::Config(format!("output directory {} is read-only", dir.display())));
            }
        }
        Ok(())
    }

    /// Parameter blocks with one axis value substituted.
    pub fn at(&self, axis: &str, value: f64) -> (BosonGasParams, BulkParams, f64) {
        let mut boson = self.boson;
        let mut bulk = self.bulk;
        let mut ratio = self.rinf_ratio;
        match axis {
            "q" => boson.charge = value,
            "m" => boson.mass = value,
            "H" => boson.field = value,
            "beta" => boson.beta = value,
            "k" => boson.k = value,
            "L" => {
                bulk.ads_radius = value;
                if !self.explicit_lambda {
                    bulk.cosmological_constant = -3.0 / (value * value);
                }
                if !self.explicit_radius {
                    bulk.complexity_radius = value;
                }
            }
            "xi" => bulk.xi = value,
            "Q" => bulk.charge = value,
            "V0" => bulk.potential = value,
            "z" => bulk.z = value,
            "r_plus" => bulk.horizon = value,
            "G" => bulk.newton = value,
            "R" => bulk.complexity_radius = value,
            "rinf_ratio" => ratio = value,
            _ => unreachable!("axis names are validated"),
        }
        (boson, bulk, ratio)
    }

    /// Every resolved setting, in a fixed order, as it is written into artifacts.
    pub fn echo(&self) -> Vec<(&'static str, Value)> {
        let b = &self.boson;
        let p = &self.bulk;
        let q = &self.quadrature;
        let g = &self.grid;
        let mut out = vec![
            ("N", json!(b.particles)),
            ("q", json!(b.charge)),
            ("m", json!(b.mass)),
            ("H", json!(b.field)),
            ("beta", json!(b.beta)),
            ("k", json!(b.k)),
            ("L", json!(p.ads_radius)),
            ("Lambda", json!(p.cosmological_constant)),
            ("xi", json!(p.xi)),
            ("Q", json!(p.charge)),
            ("V0", json!(p.potential)),
            ("z", json!(p.z)),
            ("r_plus", json!(p.horizon)),
            ("r0", json!(p.time_scale)),
            ("G", json!(p.newton)),
            ("R", json!(p.complexity_radius)),
            ("gamma", json!(p.dilaton_gamma)),
            ("lambda", json!(p.dilaton_lambda)),
            ("rinf_ratio", json!(self.rinf_ratio)),
            ("scheme", json!(q.scheme.name())),
            ("panels", json!(q.panels)),
            ("exponent", json!(q.endpoint_exponent)),
            ("levels", json!(q.refinement_levels)),
            ("tolerance", json!(q.tolerance)),
            ("grid_points", json!(g.points)),
            ("grid_half_width", json!(g.half_width)),
            ("grid_levels", json!(g.refinement_levels)),
            ("grid_tolerance", json!(g.tolerance)),
        ];
        if let Some(a) = &self.sweep {
            out.extend([
                ("axis", json!(a.name)),
                ("from", json!(a.from)),
                ("to", json!(a.to)),
                ("points", json!(a.points)),
                ("log", json!(a.log)),
            ]);
        }
        if self.subcommand == Subcommand::Verify {
            out.push(("seed", json!(self.seed)));
            if let Some(f) = &self.inject_fault {
                out.push(("inject_fault", json!(f)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn output() -> OutputOptions {
        OutputOptions { out: None, format: Format::Csv, workers: 1 }
    }

    #[test]
    fn defaults_resolve() {
        let c = RunConfig::resolve(Subcommand::Bulk, &KeyValues::default(), output()).unwrap();
        assert_eq!(c.bulk, BulkParams::default());
        assert_eq!(c.boson, BosonGasParams::default());
        assert_eq!(c.rinf_ratio, 100.0);
    }

    #[test]
    fn aliases_and_unknown_keys() {
        let mut kv = KeyValues::default();
        kv.set("Q̃", "2.5").unwrap();
        kv.set("q_tilde", "3").unwrap();
        assert_eq!(kv.get("Q"), Some("3"));
        assert!(matches!(kv.set("bogus", "1"), Err(Error::Config(_))));
    }

    #[test]
    fn lambda_and_radius_follow_l() {
        let mut kv = KeyValues::default();
        kv.set("L", "2").unwrap();
        let c = RunConfig::resolve(Subcommand::Bulk, &kv, output()).unwrap();
        assert_eq!(c.bulk.cosmological_constant, -0.75);
        assert_eq!(c.bulk.complexity_radius, 2.0);
        kv.set("Lambda", "-1").unwrap();
        assert!(matches!(RunConfig::resolve(Subcommand::Bulk, &kv, output()), Err(Error::Config(_))));
    }

    #[test]
    fn sweep_validation() {
        let sweep = |pairs: &[(&str, &str)]| {
            let mut kv = KeyValues::default();
            for (k, v) in pairs {
                kv.set(k, *v).unwrap();
            }
            RunConfig::resolve(Subcommand::Sweep, &kv, output())
        };
        assert!(sweep(&[("axis", "Q"), ("from", "1"), ("to", "10"), ("points", "10"), ("log", "true")]).is_ok());
        assert!(sweep(&[("axis", "N"), ("from", "1"), ("to", "10")]).is_err());
        assert!(sweep(&[("axis", "Q"), ("from", "1"), ("to", "1")]).is_err());
        assert!(sweep(&[("axis", "Q"), ("from", "-1"), ("to", "1"), ("log", "true")]).is_err());
        assert!(sweep(&[("axis", "H"), ("from", "-1"), ("to", "1")]).is_err());
        assert!(sweep(&[("axis", "Q"), ("from", "1")]).is_err());
        assert!(sweep(&[]).is_err());
    }

    #[test]
    fn log_axis_hits_endpoints() {
        let a = SweepAxis { name: "Q".into(), from: 1.0, to: 10.0, points: 10, log: true };
        let v = a.values();
        assert_eq!(v.len(), 10);
        assert_eq!((v[0], v[9]), (1.0, 10.0));
        assert!(v.windows(2).all(|w| w[1] > w[0]));
        assert!((v[1] - 10f64.powf(1.0 / 9.0)).abs() < 1e-14);
    }

    #[test]
    fn toml_and_csv_header_configs() {
        let dir = tempfile::tempdir().unwrap();
        let toml_path = dir.path().join("run.toml");
        std::fs::write(&toml_path, "Q = 2\nxi = -0.5\nscheme = \"gauss-legendre\"\nlog = true\n").unwrap();
        let kv = KeyValues::from_file(&toml_path).unwrap();
        assert_eq!(kv.get("Q"), Some("2"));
        assert_eq!(kv.get("scheme"), Some("gauss-legendre"));
        assert_eq!(kv.get("log"), Some("true"));

        let csv_path = dir.path().join("out.csv");
        std::fs::write(&csv_path, "# lifshitz-fidelity bulk\n# Q = 2.0\n# xi = -0.5\nname,value\n").unwrap();
        let kv = KeyValues::from_file(&csv_path).unwrap();
        assert_eq!(kv.get("xi"), Some("-0.5"));

        let json_path = dir.path().join("out.json");
        std::fs::write(&json_path, r#"{"config": {"Q": 3.0, "scheme": "simpson"}, "results": {}}"#).unwrap();
        let kv = KeyValues::from_file(&json_path).unwrap();
        assert_eq!(kv.get("Q"), Some("3.0"));
        assert_eq!(kv.get("scheme"), Some("simpson"));
    }
}
