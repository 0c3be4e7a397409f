//! Maximal-volume integrals, holographic complexity and background
//! subtraction.
//!
//! Volumes are per unit boundary two-area. On a constant-time slice the
//! induced volume element is `r² dr / √B`, independent of the lapse.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bulk::{require_z4, series_coeffs_z4, Blackening, BulkParams};
use crate::error::{Error, Result};
use crate::fit::least_squares;
use crate::quadrature::{integrate, integrate_endpoint, Estimate, LowerEndpoint, QuadratureSpec};

/// Where the divergent volume was cut off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Cutoff {
    /// Radial IR cutoff `r_∞`.
    RInf(f64),
    /// Cutoff `ε` in `w = r₊/r`.
    Epsilon(f64),
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::RInf(r) => write!(f, "r_inf = {r}"),
            Cutoff::Epsilon(e) => write!(f, "epsilon = {e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VolumeMode {
    /// Full blackening function.
    FullB,
    /// The z = 4 truncation `b₁w³ - b₋₂/w²`, without the constant of `B`.
    TruncatedB,
    /// Closed-form leading terms of the small-`b₁` expansion.
    Series,
    /// Horizonless reference geometry.
    Background,
}

impl std::str::FromStr for VolumeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-b" => Ok(VolumeMode::FullB),
            "truncated-b" => Ok(VolumeMode::TruncatedB),
            other => Err(Error::Config(format!("unknown volume mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub value: f64,
    pub cutoff: Cutoff,
    pub mode: VolumeMode,
    /// Coefficient of the leading divergence in the cutoff variable:
    /// of `r_∞²` for radial cutoffs, of `ε⁻²` for `w` cutoffs.
    pub divergent_coefficient: Option<f64>,
    pub error_estimate: f64,
}

/// `∫_{r_lo}^{r_hi} r² dr / √B(r)` for any blackening function.
///
/// A simple root of `B` at `r_lo` is detected and handled through the
/// endpoint map of the quadrature; a positive `B(r_lo)` is a regular endpoint.
pub fn maximal_volume<B: Blackening>(b: &B, r_lo: f64, r_hi: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    const OP: &str = "volume_exact";
    if !(r_hi >= r_lo) || r_lo < 0.0 {
        return Err(Error::domain(OP, format!("need 0 <= r_lo <= r_hi, got [{r_lo}, {r_hi}]")));
    }
    let b_lo = b.value(r_lo);
    let slope = b.derivative(r_lo);
    let root_tol = 1e-12 * (1.0 + slope.abs() * r_lo.max(1.0));
    let lower = if b_lo.abs() <= root_tol {
        if r_lo == 0.0 {
            LowerEndpoint::Regular
        } else if slope > 0.0 {
            LowerEndpoint::InverseSqrt { strength: r_lo * r_lo / slope.sqrt() }
        } else {
            return Err(Error::NonPositiveBlackening { op: OP, r: r_lo, value: slope });
        }
    } else if b_lo > 0.0 {
        LowerEndpoint::Regular
    } else {
        return Err(Error::NonPositiveBlackening { op: OP, r: r_lo, value: b_lo });
    };
    let f = |r: f64| -> Result<f64> {
        let v = b.value(r);
        if v > 0.0 {
            Ok(r * r / v.sqrt())
        } else {
            Err(Error::NonPositiveBlackening { op: OP, r, value: v })
        }
    };
    integrate_endpoint(OP, f, r_lo, r_hi, lower, spec)
}

/// Volume of the deformed geometry from the horizon to `r_∞`.
pub fn volume_exact(p: &BulkParams, r_inf: f64, spec: &QuadratureSpec) -> Result<VolumeResult> {
    p.validate("volume_exact")?;
    if !(r_inf > p.horizon) {
        return Err(Error::domain("volume_exact", format!("r_inf = {r_inf} must exceed r₊ = {}", p.horizon)));
    }
    let b = p.blackening();
    let est = maximal_volume(&b, p.horizon, r_inf, spec)?;
    Ok(VolumeResult {
        value: est.value,
        cutoff: Cutoff::RInf(r_inf),
        mode: VolumeMode::FullB,
        divergent_coefficient: b.quadratic_growth().map(|a| 0.5 / a.sqrt()),
        error_estimate: est.error,
    })
}

/// Lower limit of the background integral: 0 when `B_bg(0) > 0`, otherwise
/// the background's own zero.
pub fn background_lower_limit(p: &BulkParams) -> Result<f64> {
    let c0 = p.constant_term();
    let c2 = p.quadratic_term();
    if !(c2 < 0.0) {
        return Err(Error::domain("background_volume", format!("Λ + Q̃²ξ = {} must be negative", p.effective_lambda())));
    }
    Ok(if c0 > 0.0 { 0.0 } else { (c0 / c2).sqrt() })
}

/// Volume of the horizonless background `B_bg = c₀ - c₂r²` up to `r_∞`.
pub fn background_volume(p: &BulkParams, r_inf: f64, spec: &QuadratureSpec) -> Result<VolumeResult> {
    const OP: &str = "background_volume";
    p.validate(OP)?;
    let r_min = background_lower_limit(p)?;
    if r_inf < r_min {
        return Err(Error::domain(OP, format!("r_inf = {r_inf} is below the background zero {r_min}")));
    }
    let b = p.background_blackening();
    let est = maximal_volume(&b, r_min, r_inf, spec)?;
    Ok(VolumeResult {
        value: est.value,
        cutoff: Cutoff::RInf(r_inf),
        mode: VolumeMode::Background,
        divergent_coefficient: b.quadratic_growth().map(|a| 0.5 / a.sqrt()),
        error_estimate: est.error,
    })
}

/// `r₊³ ∫_ε^1 dw / (w⁴ √b(w))` with `w = r₊/r`.
///
/// The range is split at `w = 1/2`: below it `w = eᵘ` flattens the `w⁻³`
/// growth, above it the square-root map absorbs the horizon root at `w = 1`.
pub fn volume_w_form(p: &BulkParams, eps: f64, mode: VolumeMode, spec: &QuadratureSpec) -> Result<VolumeResult> {
    const OP: &str = "volume_w_form";
    p.validate(OP)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain(OP, format!("cutoff ε = {eps} must lie in (0, 1)")));
    }
    let rp = p.horizon;
    let r3 = rp.powi(3);

    let (b_of_w, upper, divergent): (Box<dyn Fn(f64) -> Result<f64>>, LowerEndpoint, Option<f64>) = match mode {
        VolumeMode::FullB => {
            let b = p.blackening();
            let slope = b.derivative(rp);
            if !(slope > 0.0) {
                return Err(Error::NonPositiveBlackening { op: OP, r: rp, value: slope });
            }
            let f = move |w: f64| -> Result<f64> {
                let r = rp / w;
                let v = b.value(r);
                if v > 0.0 {
                    Ok(v)
                } else {
                    Err(Error::NonPositiveBlackening { op: OP, r, value: v })
                }
            };
            let strength = r3 / (slope * rp).sqrt();
            let div = b.quadratic_growth().map(|a| 0.5 * rp * rp / a.sqrt());
            (Box::new(f), LowerEndpoint::InverseSqrt { strength }, div)
        }
        VolumeMode::TruncatedB => {
            let c = series_coeffs_z4(p)?;
            let at_one = c.b(1.0);
            let upper = if at_one.abs() <= 1e-12 * c.b_minus2.abs().max(1.0) {
                let slope = c.b_derivative(1.0);
                if !(slope < 0.0) {
                    return Err(Error::ImaginaryIntegrand { op: OP, w: 1.0, value: -slope });
                }
                LowerEndpoint::InverseSqrt { strength: r3 / (-slope).sqrt() }
            } else if at_one > 0.0 {
                LowerEndpoint::Regular
            } else {
                return Err(Error::ImaginaryIntegrand { op: OP, w: 1.0, value: at_one });
            };
            let f = move |w: f64| -> Result<f64> {
                let v = c.b(w);
                if v > 0.0 {
                    Ok(v)
                } else {
                    Err(Error::ImaginaryIntegrand { op: OP, w, value: v })
                }
            };
            let div = c.is_valid().then(|| 0.5 * r3 / (-c.b_minus2).sqrt());
            (Box::new(f), upper, div)
        }
        other => return Err(Error::domain(OP, format!("mode {other:?} is not a w-form integrand"))),
    };
    let integrand = |w: f64| -> Result<f64> { Ok(r3 / (w.powi(4) * b_of_w(w)?.sqrt())) };

    let split = eps.max(0.5);
    let mut total = Estimate { value: 0.0, error: 0.0 };
    if eps < split {
        let low = integrate(OP, |u: f64| Ok(integrand(u.exp())? * u.exp()), eps.ln(), split.ln(), spec)?;
        total.value += low.value;
        total.error += low.error;
    }
    let high = integrate_endpoint(OP, |t: f64| integrand(1.0 - t), 0.0, 1.0 - split, upper, spec)?;
    total.value += high.value;
    total.error += high.error;

    Ok(VolumeResult {
        value: total.value,
        cutoff: Cutoff::Epsilon(eps),
        mode,
        divergent_coefficient: divergent,
        error_estimate: total.error,
    })
}

/// Finite and divergent parts of the z = 4 closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesVolume {
    /// `r₊³ A / (3840 (-b₋₂)^{9/2})` with `A = 640 b₋₂³ (b₁ - 3b₋₂)`.
    pub finite: f64,
    /// `r₊³ / (2ε² √(-b₋₂))`.
    pub divergent: f64,
}

pub fn series_parts_z4(p: &BulkParams, eps: f64) -> Result<SeriesVolume> {
    const OP: &str = "volume_series_z4";
    require_z4(OP, p)?;
    if !(eps > 0.0) {
        return Err(Error::domain(OP, format!("cutoff ε = {eps} must be positive")));
    }
    let c = series_coeffs_z4(p)?;
    if !c.is_valid() {
        return Err(Error::Constraint { op: OP, detail: format!("b₋₂ = {} must be negative", c.b_minus2) });
    }
    let r3 = p.horizon.powi(3);
    let k = -c.b_minus2;
    let a = 640.0 * c.b_minus2.powi(3) * (c.b1 - 3.0 * c.b_minus2);
    Ok(SeriesVolume {
        finite: r3 * a / (3840.0 * k.powf(4.5)),
        divergent: r3 / (2.0 * eps * eps * k.sqrt()),
    })
}

pub fn volume_series_z4(p: &BulkParams, eps: f64) -> Result<VolumeResult> {
    let parts = series_parts_z4(p, eps)?;
    let c = series_coeffs_z4(p)?;
    Ok(VolumeResult {
        value: parts.finite + parts.divergent,
        cutoff: Cutoff::Epsilon(eps),
        mode: VolumeMode::Series,
        divergent_coefficient: Some(0.5 * p.horizon.powi(3) / (-c.b_minus2).sqrt()),
        error_estimate: 0.0,
    })
}

/// Analytic coefficient of `ε⁻²` in the w-form volume, `r₊³/(2√(-r₊²c₂))`.
/// For z = 4 this is `r₊³/(2√(-b₋₂))`.
pub fn leading_divergence(p: &BulkParams) -> Result<f64> {
    let c2 = p.quadratic_term();
    if !(c2 < 0.0) {
        return Err(Error::domain("leading_divergence", "Λ + Q̃²ξ must be negative"));
    }
    Ok(0.5 * p.horizon.powi(3) / (-c2 * p.horizon * p.horizon).sqrt())
}

/// Least-squares fit of `V(ε) = C ε⁻² + D ln ε + V₀ + E ε²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceFit {
    pub leading: f64,
    pub logarithmic: f64,
    pub constant: f64,
    pub rms_residual: f64,
}

pub fn fit_divergence(p: &BulkParams, mode: VolumeMode, eps_samples: &[f64], spec: &QuadratureSpec) -> Result<DivergenceFit> {
    let values: Vec<f64> = eps_samples
        .iter()
        .map(|&e| volume_w_form(p, e, mode, spec).map(|v| v.value))
        .collect::<Result<_>>()?;
    let fit = least_squares(
        "fit_divergence",
        eps_samples,
        &values,
        &[&|e: f64| e.powi(-2), &|e: f64| e.ln(), &|_| 1.0, &|e: f64| e * e],
    )?;
    Ok(DivergenceFit {
        leading: fit.coefficients[0],
        logarithmic: fit.coefficients[1],
        constant: fit.coefficients[2],
        rms_residual: fit.rms_residual,
    })
}

/// Holographic complexity `F = V/(8πRG)` at a recorded cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complexity {
    pub value: f64,
    pub cutoff: Cutoff,
}

pub fn complexity(v: &VolumeResult, p: &BulkParams) -> Result<Complexity> {
    if !(p.complexity_radius > 0.0) || !(p.newton > 0.0) {
        return Err(Error::domain(
            "complexity",
            format!("R = {} and G = {} must be positive", p.complexity_radius, p.newton),
        ));
    }
    Ok(Complexity { value: v.value / (8.0 * PI * p.complexity_radius * p.newton), cutoff: v.cutoff })
}

fn same_cutoff(a: Cutoff, b: Cutoff) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs());
    match (a, b) {
        (Cutoff::RInf(x), Cutoff::RInf(y)) | (Cutoff::Epsilon(x), Cutoff::Epsilon(y)) => close(x, y),
        _ => false,
    }
}

/// `F_deformed - F_background`, only defined at a shared cutoff.
pub fn regularize(deformed: &Complexity, background: &Complexity) -> Result<f64> {
    if !same_cutoff(deformed.cutoff, background.cutoff) {
        return Err(Error::CutoffMismatch {
            deformed: deformed.cutoff.to_string(),
            background: background.cutoff.to_string(),
        });
    }
    Ok(deformed.value - background.value)
}

/// Background-subtracted complexity at a matched radial cutoff.
pub fn regularized_complexity(p: &BulkParams, r_inf: f64, spec: &QuadratureSpec) -> Result<f64> {
    let deformed = complexity(&volume_exact(p, r_inf, spec)?, p)?;
    let background = complexity(&background_volume(p, r_inf, spec)?, p)?;
    regularize(&deformed, &background)
}

/// Closed-form holographic susceptibility for z = 4:
/// `√5 r₊² √(-ξ) (2L²ξQ̃ + 3) / (48π G L³ ξ² Q̃³)`.
pub fn xi_f_holo_z4(p: &BulkParams) -> Result<f64> {
    const OP: &str = "xi_f_holo_z4";
    require_z4(OP, p)?;
    p.validate(OP)?;
    if !(p.xi < 0.0) {
        return Err(Error::domain(OP, format!("ξ = {} must be negative", p.xi)));
    }
    if p.charge == 0.0 {
        return Err(Error::domain(OP, "Q̃ must be non-zero"));
    }
    let (l, xi, q) = (p.ads_radius, p.xi, p.charge);
    let numer = 5f64.sqrt() * p.horizon.powi(2) * (-xi).sqrt() * (2.0 * l * l * xi * q + 3.0);
    let denom = 48.0 * PI * p.newton * l.powi(3) * xi * xi * q.powi(3);
    Ok(numer / denom)
}
