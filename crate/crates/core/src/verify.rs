//! Invariant suite behind the `verify` subcommand.
//!
//! Every check reduces to a non-negative deviation compared against a fixed
//! tolerance. A fault can be injected into any named check, which pushes its
//! deviation past the tolerance; the suite must then report a failure.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boundary::{
    default_fit_samples, gaussian_overlap, ground_state, oscillator_spectrum_oracle, overlap_quadrature,
    xi_f_analytic, xi_f_from_fit_with, BosonGasParams, GridSpec,
};
use crate::bulk::{blackening, lifshitz_exponent, series_coeffs_z4, BulkParams};
use crate::duality::{match_parameters, verify_duality, SignFlag};
use crate::error::{Error, Result};
use crate::fit::slope;
use crate::quadrature::QuadratureSpec;
use crate::volume::{
    fit_divergence, leading_divergence, regularized_complexity, series_parts_z4, volume_exact, volume_w_form,
    xi_f_holo_z4, VolumeMode,
};

pub const CHECK_NAMES: &[&str] = &[
    "boundary.normalization",
    "boundary.oracle_equality",
    "boundary.xif_reproduction",
    "boundary.convention_bridge",
    "boundary.n_linearity",
    "boundary.k_independence",
    "boundary.eigen_oracle",
    "boundary.beta_cancellation",
    "bulk.horizon_identity",
    "bulk.coefficient_consistency",
    "bulk.exponent_roundtrip",
    "bulk.truncation_relation",
    "volume.change_of_variables",
    "volume.series_order",
    "volume.divergence_coefficient",
    "volume.regularization_convergence",
    "volume.positivity",
    "duality.dictionary_identity",
    "duality.scaling_covariance",
    "duality.sign_flags",
    "spot.xi_f_holo",
    "spot.xi_f_analytic",
    "spot.matched_n",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub inject_fault: Option<String>,
    pub quadrature: QuadratureSpec,
    pub grid: GridSpec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0x5eed,
            inject_fault: None,
            quadrature: QuadratureSpec::default(),
            grid: GridSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Fixed-width table, one row per check.
    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!("{:<width$}  {:>12}  {:>12}  status\n", "check", "deviation", "tolerance");
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>12.3e}  {:>12.3e}  {}\n",
                c.name,
                c.deviation,
                c.tolerance,
                if c.passed { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}

type Measured = Result<(f64, String)>;

/// Run every check. Numerical errors inside a check count as failures of
/// that check; only a bad fault name is an error.
pub fn run_suite(opts: &VerifyOptions) -> Result<Suite> {
    if let Some(name) = &opts.inject_fault {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(Error::Config(format!("unknown check `{name}` for fault injection")));
        }
    }
    let ctx = Context { opts, seed: opts.seed };
    let table: [(&str, f64, fn(&Context) -> Measured); 23] = [
        ("boundary.normalization", 1e-10, normalization),
        ("boundary.oracle_equality", 1e-10, oracle_equality),
        ("boundary.xif_reproduction", 1e-5, xif_reproduction),
        ("boundary.convention_bridge", 1e-6, convention_bridge),
        ("boundary.n_linearity", 1e-6, n_linearity),
        ("boundary.k_independence", 1e-12, k_independence),
        ("boundary.eigen_oracle", 1e-5, eigen_oracle),
        ("boundary.beta_cancellation", 1e-6, beta_cancellation),
        ("bulk.horizon_identity", 1e-12, horizon_identity),
        ("bulk.coefficient_consistency", 1e-12, coefficient_consistency),
        ("bulk.exponent_roundtrip", 1e-12, exponent_roundtrip),
        ("bulk.truncation_relation", 1e-12, truncation_relation),
        ("volume.change_of_variables", 1e-8, change_of_variables),
        ("volume.series_order", 0.2, series_order),
        ("volume.divergence_coefficient", 1e-6, divergence_coefficient),
        ("volume.regularization_convergence", 1e-4, regularization_convergence),
        ("volume.positivity", 0.5, positivity),
        ("duality.dictionary_identity", 1e-10, dictionary_identity),
        ("duality.scaling_covariance", 1e-12, scaling_covariance),
        ("duality.sign_flags", 0.5, sign_flags),
        ("spot.xi_f_holo", 1e-12, spot_xi_f_holo),
        ("spot.xi_f_analytic", 1e-15, spot_xi_f_analytic),
        ("spot.matched_n", 1e-12, spot_matched_n),
    ];
    let checks = table
        .iter()
        .map(|&(name, tolerance, f)| {
            let (mut deviation, detail) = match f(&ctx) {
                Ok(m) => m,
                Err(e) => (f64::INFINITY, e.to_string()),
            };
            if opts.inject_fault.as_deref() == Some(name) {
                deviation += 2.0 * tolerance;
            }
            Check { name: name.to_string(), deviation, tolerance, passed: deviation <= tolerance, detail }
        })
        .collect();
    Ok(Suite { checks })
}

struct Context<'a> {
    opts: &'a VerifyOptions,
    seed: u64,
}

impl Context<'_> {
    /// Independent stream per check so that adding checks never reshuffles others.
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn worst(devs: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    devs.into_iter().try_fold(0.0_f64, |m, d| Ok(m.max(d?)))
}

fn gas(particles: u32, charge: f64, field: f64, beta: f64) -> BosonGasParams {
    BosonGasParams { particles, charge, field, beta, ..Default::default() }
}

/// Random z = 4 bulk point with a positive blackening function outside r₊.
pub fn random_bulk(rng: &mut impl Rng) -> BulkParams {
    BulkParams::z4(
        rng.random_range(0.5..2.0),
        rng.random_range(-2.0..-0.05),
        rng.random_range(0.5..3.0),
        rng.random_range(0.0..3.0),
        rng.random_range(0.5..2.0),
        rng.random_range(0.5..2.0),
    )
}

fn normalization(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(1);
    let d = worst((0..10).map(|_| {
        let p = gas(1, rng.random_range(0.1..10.0), rng.random_range(0.1..10.0), rng.random_range(-5.0..5.0));
        Ok((overlap_quadrature(&p, 0.0, &ctx.opts.grid)? - 1.0).abs())
    }))?;
    Ok((d, "10 random ground states".into()))
}

fn oracle_equality(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(2);
    let d = worst((0..20).map(|_| {
        let p = gas(1, rng.random_range(0.1..10.0), rng.random_range(0.1..10.0), rng.random_range(-5.0..5.0));
        let dh = rng.random_range(-0.5..0.5) * p.field;
        let s0 = ground_state(&p)?;
        let s1 = ground_state(&p.with_field(p.field + dh))?;
        let closed = gaussian_overlap(s0.width, s0.center, s1.width, s1.center)?;
        Ok(rel(overlap_quadrature(&p, dh, &ctx.opts.grid)?, closed))
    }))?;
    Ok((d, "20 random (q, H, β, δH)".into()))
}

fn xif_reproduction(ctx: &Context) -> Measured {
    let d = worst([gas(1, 1.0, 1.0, 0.0), gas(1, 2.0, 0.5, 0.7), gas(8, 0.5, 2.0, -1.2)].iter().map(|p| {
        let fit = xi_f_from_fit_with(p, &default_fit_samples(p.field), &ctx.opts.grid)?;
        Ok(rel(fit.c_sq, xi_f_analytic(p)?))
    }))?;
    Ok((d, "fitted c_sq against N(qH+4β²)/(8qH³)".into()))
}

fn convention_bridge(ctx: &Context) -> Measured {
    let p = gas(1, 1.5, 0.8, 0.4);
    let fit = xi_f_from_fit_with(&p, &default_fit_samples(p.field), &ctx.opts.grid)?;
    Ok((rel(fit.c_sq, 2.0 * fit.c_amp), format!("c_sq = {:e}, c_amp = {:e}", fit.c_sq, fit.c_amp)))
}

fn n_linearity(ctx: &Context) -> Measured {
    let one = gas(1, 1.2, 0.9, 0.3);
    let samples = default_fit_samples(one.field);
    let base = xi_f_from_fit_with(&one, &samples, &ctx.opts.grid)?.c_sq;
    let d = worst([2u32, 5, 8].iter().map(|&n| {
        let c = xi_f_from_fit_with(&BosonGasParams { particles: n, ..one }, &samples, &ctx.opts.grid)?.c_sq;
        Ok(rel(c, n as f64 * base))
    }))?;
    Ok((d, "N ∈ {2, 5, 8}".into()))
}

fn k_independence(ctx: &Context) -> Measured {
    let p = gas(1, 1.3, 0.8, 0.7);
    let samples = default_fit_samples(p.field);
    let base = xi_f_from_fit_with(&p, &samples, &ctx.opts.grid)?.c_sq;
    let d = worst([1.0, 10.0].iter().map(|&k| {
        Ok(rel(xi_f_from_fit_with(&BosonGasParams { k, ..p }, &samples, &ctx.opts.grid)?.c_sq, base))
    }))?;
    Ok((d, "k ∈ {0, 1, 10}".into()))
}

fn eigen_oracle(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(3);
    let d = worst((0..4).map(|_| {
        let p = BosonGasParams {
            charge: rng.random_range(0.5..2.0),
            mass: rng.random_range(0.5..2.0),
            field: rng.random_range(0.5..2.0),
            beta: rng.random_range(-2.0..2.0),
            k: rng.random_range(-1.0..1.0),
            ..Default::default()
        };
        Ok(rel(oscillator_spectrum_oracle(&p, &ctx.opts.grid)?, ground_state(&p)?.energy))
    }))?;
    Ok((d, "4 random (q, m, H, β, k)".into()))
}

fn beta_cancellation(ctx: &Context) -> Measured {
    let p = gas(1, 1.0, 1.0, 0.0);
    let base = oscillator_spectrum_oracle(&p, &ctx.opts.grid)?;
    let d = worst([1.0, 3.0].iter().map(|&beta| Ok(rel(oscillator_spectrum_oracle(&BosonGasParams { beta, ..p }, &ctx.opts.grid)?, base))))?;
    Ok((d, "β ∈ {0, 1, 3}".into()))
}

fn horizon_identity(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(4);
    let d = worst((0..1000).map(|_| {
        let p = BulkParams { z: rng.random_range(1.0..8.0), ..random_bulk(&mut rng) };
        let scale = p.constant_term().abs() + (p.quadratic_term() * p.horizon * p.horizon).abs();
        Ok(blackening(p.horizon, &p)?.abs() / scale.max(1.0))
    }))?;
    Ok((d, "1000 random points, z ∈ [1, 8)".into()))
}

fn coefficient_consistency(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(5);
    let d = worst((0..200).map(|_| {
        let p = random_bulk(&mut rng);
        let c = series_coeffs_z4(&p)?;
        let scale = c.b1.abs().max(c.b_minus2.abs()).max(1.0);
        Ok((c.b1 - c.b_minus2 + p.potential / 6.0).abs() / scale)
    }))?;
    Ok((d, "b₁ - b₋₂ = -Ṽ₀/6".into()))
}

fn exponent_roundtrip(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(6);
    let d = worst((0..200).map(|_| {
        let l: f64 = rng.random_range(0.3..3.0);
        let lambda = -3.0 / (l * l);
        let q: f64 = rng.random_range(0.2..5.0);
        let xi = -lambda / (2.0 * q * q);
        Ok((lifshitz_exponent(q, xi, lambda)? - 4.0).abs() / 4.0)
    }))?;
    Ok((d, "Q̃²ξ = -Λ/2 gives z = 4".into()))
}

fn truncation_relation(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(7);
    let d = worst((0..50).flat_map(|_| {
        let p = random_bulk(&mut rng);
        (1..=20).map(move |i| {
            let w = i as f64 / 20.0;
            let c = series_coeffs_z4(&p)?;
            let lhs = c.b(w) + p.potential / 6.0;
            let rhs = blackening(p.horizon / w, &p)?;
            Ok((lhs - rhs).abs() / rhs.abs().max(1.0))
        })
    }))?;
    Ok((d, "b(w) + Ṽ₀/6 = B(r₊/w) on w ∈ (0, 1]".into()))
}

fn change_of_variables(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(8);
    let d = worst((0..5).map(|_| {
        let p = random_bulk(&mut rng);
        let ratio: f64 = rng.random_range(5.0..50.0);
        let exact = volume_exact(&p, ratio * p.horizon, &ctx.opts.quadrature)?;
        let w = volume_w_form(&p, 1.0 / ratio, VolumeMode::FullB, &ctx.opts.quadrature)?;
        Ok(rel(exact.value, w.value))
    }))?;
    Ok((d, "volume_exact(r_∞) against the w-form at ε = r₊/r_∞".into()))
}

/// `b₁/b₋₂` ratios used for the convergence-order regression.
pub const SERIES_RATIOS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// z = 4 point with `b₋₂ = -1` (r₊ = 1) and `b₁ = ρ b₋₂`.
pub fn series_point(ratio: f64) -> BulkParams {
    let b_minus2 = -1.0;
    let b1 = ratio * b_minus2;
    BulkParams::z4(1.0, -2.0, 1.0, -6.0 * (b1 - b_minus2), 1.0, 1.0)
}

/// Log-log slope of `|V_quadrature - V_series| / |finite part|` against `b₁/b₋₂`.
pub fn series_order_slope(eps: f64, spec: &QuadratureSpec) -> Result<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for ratio in SERIES_RATIOS {
        let p = series_point(ratio);
        let quad = volume_w_form(&p, eps, VolumeMode::TruncatedB, spec)?.value;
        let series = series_parts_z4(&p, eps)?;
        let gap = (quad - series.finite - series.divergent).abs() / series.finite.abs();
        xs.push(ratio.ln());
        ys.push(gap.ln());
    }
    Ok(slope(&xs, &ys))
}

fn tight(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec { panels: spec.panels.max(4096), tolerance: spec.tolerance.min(1e-12), ..*spec }
}

fn series_order(ctx: &Context) -> Measured {
    let s = series_order_slope(0.01, &tight(&ctx.opts.quadrature))?;
    Ok(((s - 2.0).abs(), format!("slope {s:.4}")))
}

/// Cutoffs for the ε⁻² fit.
pub const DIVERGENCE_SAMPLES: [f64; 6] = [0.005, 0.0075, 0.01, 0.015, 0.02, 0.03];

fn divergence_coefficient(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(9);
    let spec = tight(&ctx.opts.quadrature);
    let d = worst((0..3).map(|_| {
        let p = random_bulk(&mut rng);
        let fit = fit_divergence(&p, VolumeMode::FullB, &DIVERGENCE_SAMPLES, &spec)?;
        Ok(rel(fit.leading, leading_divergence(&p)?))
    }))?;
    Ok((d, "fitted ε⁻² coefficient against r₊³/(2√(-b₋₂))".into()))
}

/// `r_∞/r₊` ladder for the subtraction.
pub const CUTOFF_RATIOS: [f64; 4] = [50.0, 100.0, 200.0, 400.0];

/// Regularized complexity along [`CUTOFF_RATIOS`].
pub fn regularization_ladder(p: &BulkParams, spec: &QuadratureSpec) -> Result<Vec<f64>> {
    CUTOFF_RATIOS.iter().map(|k| regularized_complexity(p, k * p.horizon, spec)).collect()
}

/// Relative size of the last step, or infinity if the steps do not shrink.
pub fn cauchy_deviation(values: &[f64]) -> f64 {
    let steps: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    if steps.windows(2).any(|s| s[1] > s[0]) {
        return f64::INFINITY;
    }
    let last = values[values.len() - 1];
    steps[steps.len() - 1] / last.abs()
}

fn regularization_convergence(ctx: &Context) -> Measured {
    let spec = tight(&ctx.opts.quadrature);
    let d = worst([BulkParams::z4(1.0, -2.0, 1.0, 0.0, 1.0, 1.0), BulkParams::z4(1.0, -0.5, 1.5, 1.0, 1.3, 1.0)].iter().map(|p| {
        Ok(cauchy_deviation(&regularization_ladder(p, &spec)?))
    }))?;
    Ok((d, "r_∞/r₊ ∈ {50, 100, 200, 400}".into()))
}

fn positivity(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(10);
    let mut bad = 0;
    for _ in 0..5 {
        let p = random_bulk(&mut rng);
        let v = volume_exact(&p, 10.0 * p.horizon, &ctx.opts.quadrature)?.value;
        if !(v > 0.0) {
            bad += 1;
        }
    }
    Ok((bad as f64, format!("{bad} non-positive volumes")))
}

fn random_dictionary_point(rng: &mut ChaCha8Rng, charge: f64) -> BulkParams {
    BulkParams::z4(
        rng.random_range(0.3..3.0),
        rng.random_range(-3.0..-0.01),
        charge,
        0.0,
        rng.random_range(0.2..5.0),
        rng.random_range(0.2..5.0),
    )
}

fn dictionary_identity(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(11);
    let mut points: Vec<BulkParams> =
        [1.0, 2.0, 5.0, 10.0].iter().map(|&q| BulkParams::z4(1.0, -1.0, q, 0.0, 1.0, 1.0)).collect();
    for _ in 0..20 {
        let q = rng.random_range(0.5..10.0);
        points.push(random_dictionary_point(&mut rng, q));
    }
    let d = worst(points.iter().map(|p| verify_duality(p).map(|r| r.relative_residual)))?;
    Ok((d, format!("{} points", points.len())))
}

fn scaling_covariance(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(12);
    let d = worst((0..10).map(|_| {
        let q = rng.random_range(0.5..10.0);
        let p = random_dictionary_point(&mut rng, q);
        let s: f64 = rng.random_range(0.5..4.0);
        let a = verify_duality(&p)?;
        let b = verify_duality(&BulkParams { horizon: s * p.horizon, ..p })?;
        let bulk = rel(b.xi_f_bulk, s * s * a.xi_f_bulk);
        let boundary = rel(b.xi_f_boundary, s * s * a.xi_f_boundary);
        Ok(bulk.max(boundary).max((b.relative_residual - a.relative_residual).abs()))
    }))?;
    Ok((d, "r₊ → s r₊ scales both sides by s²".into()))
}

fn sign_flags(ctx: &Context) -> Measured {
    let mut rng = ctx.rng(13);
    let mut wrong = 0;
    for _ in 0..20 {
        let q = rng.random_range(0.5..10.0);
        let p = random_dictionary_point(&mut rng, q);
        let r = verify_duality(&p)?;
        let expected = vec![SignFlag::NegativeN, SignFlag::NegativeBetaSqOverQ, SignFlag::NegativeXi];
        if r.flags != expected {
            wrong += 1;
        }
    }
    // ξ ≥ 0 never reaches the report
    for xi in [0.0, 0.5] {
        if match_parameters(&BulkParams::z4(1.0, xi, 1.0, 0.0, 1.0, 1.0)).is_ok() {
            wrong += 1;
        }
    }
    Ok((wrong as f64, format!("{wrong} mismatched flag sets")))
}

fn spot_xi_f_holo(_: &Context) -> Measured {
    let x = xi_f_holo_z4(&BulkParams::z4(1.0, -1.0, 1.0, 0.0, 1.0, 1.0))?;
    let expected = 5f64.sqrt() / (48.0 * PI);
    Ok(((x - expected).abs(), format!("{x:.15e}")))
}

fn spot_xi_f_analytic(_: &Context) -> Measured {
    let x = xi_f_analytic(&gas(1, 1.0, 1.0, 0.0))?;
    Ok(((x - 0.125).abs(), format!("{x}")))
}

fn spot_matched_n(_: &Context) -> Measured {
    let n = match_parameters(&BulkParams::z4(1.0, -1.0, 1.0, 0.0, 1.0, 1.0))?.particles;
    let expected = -16.0 * 5f64.sqrt() / (48.0 * PI);
    Ok(((n - expected).abs(), format!("{n:.15e}")))
}
