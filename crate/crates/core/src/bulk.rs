//! Lifshitz-AdS bulk: parameters, blackening function and the z = 4 series
//! coefficients.
//!
//! With planar horizon the metric is
//!
//! ```text
//! ds² = -(r/r₀)^z B(r) dt² + dr²/B(r) + r² dxⁱdxⁱ
//! B(r) = c₀ + (r₊/r)^{1+z/2} (c₂ r₊² - c₀) - c₂ r²
//! c₀ = (2/(2+z)) (Ṽ₀/2),   c₂ = 2(Λ + Q̃²ξ)/(6+z)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bulk-theory inputs. The dilaton couplings `γ`, `λ` are carried along for
/// provenance and never enter a computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkParams {
    /// Λ, tied to the curvature scale by `Λ = -3/L²`.
    pub cosmological_constant: f64,
    /// L.
    pub ads_radius: f64,
    /// ξ, Maxwell-dilaton coupling.
    pub xi: f64,
    /// Q̃, bulk charge.
    pub charge: f64,
    /// Ṽ₀, dilaton potential amplitude.
    pub potential: f64,
    /// Dynamical exponent z.
    pub z: f64,
    /// r₊.
    pub horizon: f64,
    /// r₀. Only rescales the lapse, so it never reaches a time-slice volume.
    pub time_scale: f64,
    /// G.
    pub newton: f64,
    /// R in `F = V/(8πRG)`.
    pub complexity_radius: f64,
    pub dilaton_gamma: f64,
    pub dilaton_lambda: f64,
}

impl Default for BulkParams {
    fn default() -> Self {
        BulkParams::z4(1.0, -0.1, 1.0, 0.0, 1.0, 1.0)
    }
}

impl BulkParams {
    /// A z = 4 point with `Λ = -3/L²`, `R = L` and `r₀ = 1`.
    pub fn z4(ads_radius: f64, xi: f64, charge: f64, potential: f64, horizon: f64, newton: f64) -> Self {
        BulkParams {
            cosmological_constant: -3.0 / (ads_radius * ads_radius),
            ads_radius,
            xi,
            charge,
            potential,
            z: 4.0,
            horizon,
            time_scale: 1.0,
            newton,
            complexity_radius: ads_radius,
            dilaton_gamma: 0.0,
            dilaton_lambda: 0.0,
        }
    }

    /// `Λ + Q̃²ξ`, the combination that sets the asymptotic curvature of `B`.
    pub fn effective_lambda(&self) -> f64 {
        self.cosmological_constant + self.charge * self.charge * self.xi
    }

    /// Constant term `c₀ = Ṽ₀/(2+z)`.
    pub fn constant_term(&self) -> f64 {
        2.0 / (2.0 + self.z) * (0.5 * self.potential)
    }

    /// Quadratic coefficient `c₂ = 2(Λ + Q̃²ξ)/(6+z)`; `B ~ -c₂ r²` at large r.
    pub fn quadratic_term(&self) -> f64 {
        2.0 * self.effective_lambda() / (6.0 + self.z)
    }

    pub fn validate(&self, op: &'static str) -> Result<()> {
        let l2 = self.ads_radius * self.ads_radius;
        if !(self.ads_radius > 0.0) {
            return Err(Error::domain(op, format!("L must be positive, got {}", self.ads_radius)));
        }
        if (self.cosmological_constant + 3.0 / l2).abs() > 1e-12 * (3.0 / l2) {
            return Err(Error::domain(
                op,
                format!("Λ = {} is not -3/L² = {}", self.cosmological_constant, -3.0 / l2),
            ));
        }
        for (name, v) in [("r₊", self.horizon), ("G", self.newton), ("r₀", self.time_scale)] {
            if !(v > 0.0) {
                return Err(Error::domain(op, format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.z >= 1.0) {
            return Err(Error::domain(op, format!("z must be at least 1, got {}", self.z)));
        }
        let all = [self.xi, self.charge, self.potential, self.complexity_radius, self.dilaton_gamma, self.dilaton_lambda];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain(op, "non-finite parameter"));
        }
        Ok(())
    }

    /// Consistency notes that do not block a computation.
    pub fn diagnostics(&self) -> Vec<GeometryNote> {
        let mut notes = Vec::new();
        match lifshitz_exponent(self.charge, self.xi, self.cosmological_constant) {
            Ok(z) if (z - self.z).abs() > 1e-9 * self.z.abs().max(1.0) => {
                notes.push(GeometryNote::ExponentMismatch { stored: self.z, implied: z })
            }
            Err(_) => notes.push(GeometryNote::ExponentUndefined),
            _ => {}
        }
        if self.effective_lambda() >= 0.0 {
            notes.push(GeometryNote::NotAsymptoticallyAdS);
        }
        notes
    }

    pub fn blackening(&self) -> LifshitzBlackening {
        LifshitzBlackening {
            constant: self.constant_term(),
            horizon_term: self.quadratic_term() * self.horizon * self.horizon - self.constant_term(),
            horizon: self.horizon,
            power: 1.0 + 0.5 * self.z,
            quadratic: self.quadratic_term(),
        }
    }

    /// The horizonless reference geometry: `B` without the `(r₊/r)^{1+z/2}` term.
    pub fn background_blackening(&self) -> LifshitzBlackening {
        LifshitzBlackening { horizon_term: 0.0, ..self.blackening() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "note", rename_all = "kebab-case")]
pub enum GeometryNote {
    /// The stored z differs from `-4Q̃²ξ/(Λ+Q̃²ξ)`.
    ExponentMismatch { stored: f64, implied: f64 },
    /// `Λ + Q̃²ξ = 0`.
    ExponentUndefined,
    /// `Λ + Q̃²ξ ≥ 0`: B does not grow at large r.
    NotAsymptoticallyAdS,
}

/// A metric function `B(r)` that a maximal-volume integral can run over.
pub trait Blackening {
    fn value(&self, r: f64) -> f64;
    fn derivative(&self, r: f64) -> f64;
    /// `A` in `B(r) ~ A r²` as `r → ∞`, if B grows quadratically.
    fn quadratic_growth(&self) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifshitzBlackening {
    constant: f64,
    /// `c₂ r₊² - c₀`; zero for the background.
    horizon_term: f64,
    horizon: f64,
    power: f64,
    quadratic: f64,
}

impl Blackening for LifshitzBlackening {
    fn value(&self, r: f64) -> f64 {
        let tail = if self.horizon_term == 0.0 { 0.0 } else { (self.horizon / r).powf(self.power) * self.horizon_term };
        self.constant + tail - self.quadratic * r * r
    }

    fn derivative(&self, r: f64) -> f64 {
        if self.horizon_term == 0.0 {
            return -2.0 * self.quadratic * r;
        }
        -self.power * self.horizon_term * (self.horizon / r).powf(self.power) / r - 2.0 * self.quadratic * r
    }

    fn quadratic_growth(&self) -> Option<f64> {
        (self.quadratic < 0.0).then_some(-self.quadratic)
    }
}

/// `B(r)` for the given parameters.
pub fn blackening(r: f64, p: &BulkParams) -> Result<f64> {
    const OP: &str = "blackening";
    if !(r > 0.0) {
        return Err(Error::domain(OP, format!("radius must be positive, got {r}")));
    }
    if p.z == -2.0 || p.z == -6.0 {
        return Err(Error::domain(OP, format!("z = {} makes a coefficient singular", p.z)));
    }
    Ok(p.blackening().value(r))
}

/// Dynamical exponent implied by the charge sector, `z = -4Q̃²ξ/(Λ + Q̃²ξ)`.
pub fn lifshitz_exponent(charge: f64, xi: f64, cosmological_constant: f64) -> Result<f64> {
    let x = charge * charge * xi;
    let denom = cosmological_constant + x;
    if denom == 0.0 {
        return Err(Error::Singularity { op: "lifshitz_exponent", detail: "Λ + Q̃²ξ = 0".into() });
    }
    Ok(-4.0 * x / denom)
}

/// Coefficients of the z = 4 integrand `b(w) = b₁ w³ - b₋₂ / w²`, `w = r₊/r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoeffsZ4 {
    pub b1: f64,
    pub b_minus2: f64,
}

impl SeriesCoeffsZ4 {
    /// `b₋₂ < 0`, needed for a real integrand near the boundary.
    pub fn is_valid(&self) -> bool {
        self.b_minus2 < 0.0
    }

    pub fn b(&self, w: f64) -> f64 {
        self.b1 * w.powi(3) - self.b_minus2 / (w * w)
    }

    pub fn b_derivative(&self, w: f64) -> f64 {
        3.0 * self.b1 * w * w + 2.0 * self.b_minus2 / w.powi(3)
    }
}

const Z4_TOLERANCE: f64 = 1e-9;

pub(crate) fn require_z4(op: &'static str, p: &BulkParams) -> Result<()> {
    if (p.z - 4.0).abs() > Z4_TOLERANCE {
        return Err(Error::Constraint { op, detail: format!("requires z = 4, got {}", p.z) });
    }
    Ok(())
}

pub fn series_coeffs_z4(p: &BulkParams) -> Result<SeriesCoeffsZ4> {
    require_z4("series_coeffs_z4", p)?;
    let e = p.effective_lambda();
    let r2 = p.horizon * p.horizon;
    Ok(SeriesCoeffsZ4 {
        b1: e / 5.0 * r2 - (0.5 * p.potential) / 3.0,
        b_minus2: r2 * e / 5.0,
    })
}
