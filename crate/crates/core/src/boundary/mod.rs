//! Boundary side: charged bosons in a uniform magnetic field.
//!
//! In the Landau gauge `A = (0, Hx, 0)` each particle carries plane waves in
//! `y` and `z` and a shifted harmonic-oscillator profile in `x`. Only the `x`
//! profile changes when the field is perturbed, so the many-body overlap is
//! the `N`-th power of a one-dimensional Gaussian overlap.

mod spectrum;

pub use spectrum::oscillator_spectrum_oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::least_squares;

/// Boundary-theory inputs in natural units (ħ = c = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BosonGasParams {
    /// Particle count `N`.
    pub particles: u32,
    /// Charge `q`.
    pub charge: f64,
    /// Mass `m`.
    pub mass: f64,
    /// Field strength `H`.
    pub field: f64,
    /// Transverse momentum `β`, shared by all particles.
    pub beta: f64,
    /// Longitudinal momentum `k`, shared by all particles.
    pub k: f64,
}

impl Default for BosonGasParams {
    fn default() -> Self {
        BosonGasParams { particles: 1, charge: 1.0, mass: 1.0, field: 1.0, beta: 0.0, k: 0.0 }
    }
}

impl BosonGasParams {
    pub fn validate(&self, op: &'static str) -> Result<()> {
        if self.particles < 1 {
            return Err(Error::domain(op, "particle count must be at least 1"));
        }
        for (name, v) in [("charge q", self.charge), ("mass m", self.mass), ("field H", self.field)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(op, format!("{name} must be positive, got {v}")));
            }
        }
        if !self.beta.is_finite() || !self.k.is_finite() {
            return Err(Error::domain(op, "momenta must be finite"));
        }
        Ok(())
    }

    /// Same gas at field `H + δH`.
    pub fn with_field(&self, field: f64) -> Self {
        BosonGasParams { field, ..*self }
    }
}

/// Single-particle Gaussian ground state of the shifted oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundState1D {
    /// Inverse squared width `a = qH`.
    pub width: f64,
    /// Orbit centre `x₀ = β/(qH)`.
    pub center: f64,
    /// `E₀ = (qH + k²)/(2m)`.
    pub energy: f64,
    /// Cyclotron frequency `ω = qH/m`.
    pub frequency: f64,
}

impl GroundState1D {
    /// `φ₀(x) = (a/π)^{1/4} exp(-a (x - x₀)²/2)`.
    pub fn wavefunction(&self, x: f64) -> f64 {
        self.log_wavefunction(x).exp()
    }

    pub fn log_wavefunction(&self, x: f64) -> f64 {
        let d = x - self.center;
        0.25 * (self.width / std::f64::consts::PI).ln() - 0.5 * self.width * d * d
    }

    pub fn sigma(&self) -> f64 {
        self.width.sqrt().recip()
    }
}

pub fn ground_state(p: &BosonGasParams) -> Result<GroundState1D> {
    p.validate("ground_state")?;
    let qh = p.charge * p.field;
    Ok(GroundState1D {
        width: qh,
        center: p.beta / qh,
        energy: (qh + p.k * p.k) / (2.0 * p.mass),
        frequency: qh / p.mass,
    })
}

/// Uniform grid around the ground state, in units of its width `σ = (qH)^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Half-width of the grid in units of σ.
    pub half_width: f64,
    pub points: usize,
    /// Levels used by the eigenvalue oracle, each halving the spacing.
    pub refinement_levels: usize,
    /// Relative tolerance on successive eigenvalue refinements.
    pub tolerance: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { half_width: 10.0, points: 4096, refinement_levels: 2, tolerance: 1e-5 }
    }
}

impl GridSpec {
    pub(crate) fn validate(&self, op: &'static str, min_points: usize) -> Result<()> {
        if !(self.half_width >= 8.0) {
            return Err(Error::GridCoverage { op, detail: format!("half-width {}σ is below 8σ", self.half_width) });
        }
        if self.points < min_points {
            return Err(Error::GridCoverage { op, detail: format!("{} points, need at least {min_points}", self.points) });
        }
        Ok(())
    }
}

/// Threshold on the integrand at the grid edges, relative to the peak.
const COVERAGE_TOLERANCE: f64 = 1e-13;

/// Closed-form overlap `∫ φ_a(x - xa) φ_b(x - xb) dx` of two normalized Gaussians.
pub fn gaussian_overlap(a: f64, xa: f64, b: f64, xb: f64) -> Result<f64> {
    Ok(log_gaussian_overlap(a, xa, b, xb)?.exp())
}

/// Logarithm of [`gaussian_overlap`], accurate when the overlap is close to one.
pub fn log_gaussian_overlap(a: f64, xa: f64, b: f64, xb: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain("gaussian_overlap", format!("widths must be positive, got {a} and {b}")));
    }
    let d = (b - a) / a;
    let prefactor = 0.25 * d.ln_1p() - 0.5 * (0.5 * d).ln_1p();
    let dx = xa - xb;
    Ok(prefactor - a * b * dx * dx / (2.0 * (a + b)))
}

/// Single-particle overlap `⟨φ₀(H)|φ₀(H + δH)⟩` by composite Simpson on a
/// grid spanning both Gaussians.
pub fn overlap_quadrature(p: &BosonGasParams, delta_field: f64, grid: &GridSpec) -> Result<f64> {
    const OP: &str = "overlap_quadrature";
    grid.validate(OP, 64)?;
    if !(delta_field > -p.field) {
        return Err(Error::domain(OP, format!("δH = {delta_field} must exceed -H = {}", -p.field)));
    }
    let s0 = ground_state(p)?;
    let s1 = ground_state(&p.with_field(p.field + delta_field))?;

    let w = grid.half_width;
    let lo = (s0.center - w * s0.sigma()).min(s1.center - w * s1.sigma());
    let hi = (s0.center + w * s0.sigma()).max(s1.center + w * s1.sigma());
    let n = grid.points + grid.points % 2;
    let h = (hi - lo) / n as f64;

    // Summed in log space: far-separated centres give overlaps below 1e-150.
    let log_f = |x: f64| s0.log_wavefunction(x) + s1.log_wavefunction(x);
    let peak_x = (s0.width * s0.center + s1.width * s1.center) / (s0.width + s1.width);
    let log_peak = log_f(peak_x);
    let mut sum = 0.0;
    for i in 0..=n {
        let x = lo + h * i as f64;
        let wt = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += wt * (log_f(x) - log_peak).exp();
    }
    let edge = (log_f(lo) - log_peak).exp().max((log_f(hi) - log_peak).exp());
    let scaled = sum * h / 3.0;
    if edge > COVERAGE_TOLERANCE * scaled {
        return Err(Error::GridCoverage {
            op: OP,
            detail: format!("edge integrand {edge:e} relative to the integral {scaled:e}"),
        });
    }
    Ok(scaled * log_peak.exp())
}

/// `|⟨Ψ(H)|Ψ(H + δH)⟩|` for the full gas, evaluated at `t = 0` with the
/// plane-wave factors cancelling. Uses the default grid.
pub fn fidelity(p: &BosonGasParams, delta_field: f64) -> Result<f64> {
    fidelity_with(p, delta_field, &GridSpec::default())
}

pub fn fidelity_with(p: &BosonGasParams, delta_field: f64, grid: &GridSpec) -> Result<f64> {
    let single = overlap_quadrature(p, delta_field, grid)?;
    Ok(single.powi(p.particles as i32))
}

/// Second-order coefficients of the fidelity extracted by least squares.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityFit {
    /// `F = 1 - c_amp δH² + …` for the overlap amplitude.
    pub c_amp: f64,
    /// `F² = 1 - c_sq δH² + …`; this is the reported susceptibility.
    pub c_sq: f64,
    /// RMS residual of the amplitude fit relative to its largest quadratic term.
    pub residual_amp: f64,
    pub residual_sq: f64,
    pub samples: Vec<f64>,
}

/// `±{1, 2, 3, 4} × 10⁻³ H`.
pub fn default_fit_samples(field: f64) -> Vec<f64> {
    [-4.0, -3.0, -2.0, -1.0, 1.0, 2.0, 3.0, 4.0].iter().map(|s| s * 1e-3 * field).collect()
}

/// Fit `F - 1` against `δH²` from quadrature overlaps at the given offsets.
pub fn xi_f_from_fit(p: &BosonGasParams, samples: &[f64]) -> Result<FidelityFit> {
    xi_f_from_fit_with(p, samples, &GridSpec::default())
}

pub fn xi_f_from_fit_with(p: &BosonGasParams, samples: &[f64], grid: &GridSpec) -> Result<FidelityFit> {
    const OP: &str = "xi_f_from_fit";
    p.validate(OP)?;
    let mut distinct = samples.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(Error::domain(OP, format!("need at least 4 distinct δH samples, got {}", distinct.len())));
    }
    if let Some(bad) = samples.iter().find(|d| d.abs() > 1e-2 * p.field) {
        return Err(Error::domain(OP, format!("|δH| = {} exceeds 1e-2 H", bad.abs())));
    }

    let amp: Vec<f64> = samples.iter().map(|&d| fidelity_with(p, d, grid)).collect::<Result<_>>()?;
    let scale = samples.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    let vs: Vec<f64> = samples.iter().map(|d| d / scale).collect();

    let quadratic = |ys: &[f64]| -> Result<(f64, f64)> {
        // cubic and quartic terms absorb the higher orders of the expansion
        let fit = least_squares(OP, &vs, ys, &[&|v: f64| -v * v, &|v: f64| v.powi(3), &|v: f64| v.powi(4)])?;
        let c = fit.coefficients[0];
        let rel = fit.rms_residual / c.abs().max(f64::MIN_POSITIVE);
        if rel > 1e-6 {
            return Err(Error::IllConditionedFit {
                op: OP,
                detail: format!("residual {rel:e} of the quadratic term"),
            });
        }
        Ok((c / (scale * scale), rel))
    };

    let ys_amp: Vec<f64> = amp.iter().map(|f| f - 1.0).collect();
    let ys_sq: Vec<f64> = amp.iter().map(|f| f * f - 1.0).collect();
    let (c_amp, residual_amp) = quadratic(&ys_amp)?;
    let (c_sq, residual_sq) = quadratic(&ys_sq)?;
    Ok(FidelityFit { c_amp, c_sq, residual_amp, residual_sq, samples: samples.to_vec() })
}

/// Closed-form susceptibility `N (qH + 4β²) / (8 q H³)`.
pub fn xi_f_analytic(p: &BosonGasParams) -> Result<f64> {
    p.validate("xi_f_analytic")?;
    let (q, h, b) = (p.charge, p.field, p.beta);
    Ok(p.particles as f64 * (q * h + 4.0 * b * b) / (8.0 * q * h.powi(3)))
}

/// Amplitude-convention coefficient, half of [`xi_f_analytic`].
pub fn xi_f_amplitude_analytic(p: &BosonGasParams) -> Result<f64> {
    Ok(0.5 * xi_f_analytic(p)?)
}

/// The same closed form written in terms of `β²/q`, for callers that only
/// know that ratio. `N` is real here because matched values need not be integers.
pub fn xi_f_from_ratio(particles: f64, beta_sq_over_q: f64, field: f64) -> Result<f64> {
    if !(field > 0.0) {
        return Err(Error::domain("xi_f_analytic", format!("field H must be positive, got {field}")));
    }
    Ok(particles * (field + 4.0 * beta_sq_over_q) / (8.0 * field.powi(3)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gas(particles: u32, charge: f64, field: f64, beta: f64) -> BosonGasParams {
        BosonGasParams { particles, charge, field, beta, ..Default::default() }
    }

    #[test]
    fn ground_state_examples() {
        let s = ground_state(&gas(1, 1.0, 1.0, 0.0)).unwrap();
        assert_eq!((s.width, s.center, s.energy, s.frequency), (1.0, 0.0, 0.5, 1.0));
        assert_eq!(ground_state(&gas(1, 1.0, 1.0, 1.0)).unwrap().center, 1.0);

        let p = BosonGasParams { particles: 1, charge: 2.0, mass: 0.5, field: 3.0, beta: 1.0, k: 1.0 };
        let s = ground_state(&p).unwrap();
        assert_eq!(s.width, 6.0);
        assert!((s.center - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(s.energy, 7.0);
        assert_eq!(s.frequency, 12.0);
    }

    #[test]
    fn ground_state_rejects_bad_params() {
        for p in [
            BosonGasParams { charge: 0.0, ..Default::default() },
            BosonGasParams { mass: -1.0, ..Default::default() },
            BosonGasParams { field: 0.0, ..Default::default() },
            BosonGasParams { particles: 0, ..Default::default() },
        ] {
            assert!(matches!(ground_state(&p), Err(Error::Domain { .. })), "{p:?}");
        }
    }

    #[test]
    fn energy_is_at_least_half_frequency() {
        let p = BosonGasParams { k: 3.0, ..Default::default() };
        let s = ground_state(&p).unwrap();
        assert!(s.energy >= 0.5 * s.frequency);
    }

    #[test]
    fn gaussian_overlap_examples() {
        assert_eq!(gaussian_overlap(1.0, 0.0, 1.0, 0.0).unwrap(), 1.0);
        assert!((gaussian_overlap(1.0, 0.0, 1.0, 1.0).unwrap() - (-0.25f64).exp()).abs() < 1e-15);
        assert!((gaussian_overlap(4.0, 0.0, 1.0, 0.0).unwrap() - 2.0 / 5f64.sqrt()).abs() < 1e-15);
        assert!(gaussian_overlap(0.0, 0.0, 1.0, 0.0).is_err());
        assert!(gaussian_overlap(1.0, 0.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn overlap_quadrature_examples() {
        let g = GridSpec::default();
        let p = gas(1, 1.0, 1.0, 0.0);
        assert!((overlap_quadrature(&p, 0.0, &g).unwrap() - 1.0).abs() < 1e-12);
        let closed = gaussian_overlap(1.0, 0.0, 2.0, 0.0).unwrap();
        assert!((closed - 0.970_984).abs() < 1e-6);
        assert!((overlap_quadrature(&p, 1.0, &g).unwrap() - closed).abs() < 1e-10 * closed);

        let p = gas(1, 1.0, 1.0, 1.0);
        let closed = gaussian_overlap(1.0, 1.0, 1.5, 2.0 / 3.0).unwrap();
        assert!((overlap_quadrature(&p, 0.5, &g).unwrap() - closed).abs() < 1e-10 * closed);
    }

    #[test]
    fn overlap_rejects_field_reversal_and_narrow_grid() {
        let p = gas(1, 1.0, 1.0, 0.0);
        assert!(matches!(overlap_quadrature(&p, -1.0, &GridSpec::default()), Err(Error::Domain { .. })));
        let narrow = GridSpec { half_width: 4.0, ..Default::default() };
        assert!(matches!(overlap_quadrature(&p, 0.1, &narrow), Err(Error::GridCoverage { .. })));
    }

    #[test]
    fn fidelity_examples() {
        assert!((fidelity(&gas(5, 1.0, 1.0, 0.0), 0.0).unwrap() - 1.0).abs() < 1e-12);
        let f2 = fidelity(&gas(2, 1.0, 1.0, 0.0), 1.0).unwrap();
        assert!((f2 - 2f64.sqrt() * 2.0 / 3.0).abs() < 1e-10);
        assert!((f2 - 0.942_810).abs() < 1e-6);
    }

    #[test]
    fn fidelity_decreases_away_from_zero() {
        let p = gas(1, 1.0, 1.0, 0.5);
        let f: Vec<f64> = [0.0, 0.01, 0.02, 0.04].iter().map(|&d| fidelity(&p, d).unwrap()).collect();
        assert!(f.windows(2).all(|w| w[1] < w[0]), "{f:?}");
        let g: Vec<f64> = [0.0, -0.01, -0.02, -0.04].iter().map(|&d| fidelity(&p, d).unwrap()).collect();
        assert!(g.windows(2).all(|w| w[1] < w[0]), "{g:?}");
    }

    #[test]
    fn fidelity_small_step_matches_series() {
        // 1 - δH²/16 for N = 1, q = H = 1, β = 0
        let p = gas(1, 1.0, 1.0, 0.0);
        let d = 1e-3;
        let f = fidelity(&p, d).unwrap();
        assert!(((1.0 - f) / (d * d) - 1.0 / 16.0).abs() < 1e-4);
    }

    #[test]
    fn fit_examples() {
        let p = gas(1, 1.0, 1.0, 0.0);
        let fit = xi_f_from_fit(&p, &default_fit_samples(1.0)).unwrap();
        assert!((fit.c_sq - 0.125).abs() < 1e-6, "{fit:?}");
        assert!((fit.c_amp - 0.0625).abs() < 1e-6, "{fit:?}");
        assert!(fit.c_amp > 0.0);
        assert!((fit.c_sq - 2.0 * fit.c_amp).abs() < 1e-9);

        let fit8 = xi_f_from_fit(&gas(8, 1.0, 1.0, 0.0), &default_fit_samples(1.0)).unwrap();
        assert!((fit8.c_sq - 1.0).abs() < 1e-5, "{fit8:?}");
    }

    #[test]
    fn fit_preconditions() {
        let p = gas(1, 1.0, 1.0, 0.0);
        assert!(matches!(xi_f_from_fit(&p, &[1e-3, 2e-3, 1e-3]), Err(Error::Domain { .. })));
        assert!(matches!(xi_f_from_fit(&p, &[1e-3, 2e-3, 3e-3, 0.05]), Err(Error::Domain { .. })));
    }

    #[test]
    fn fit_is_independent_of_k() {
        let base = BosonGasParams { beta: 0.7, charge: 1.3, field: 0.8, ..Default::default() };
        let samples = default_fit_samples(base.field);
        let ref_fit = xi_f_from_fit(&base, &samples).unwrap();
        for k in [1.0, 10.0] {
            let fit = xi_f_from_fit(&BosonGasParams { k, ..base }, &samples).unwrap();
            assert_eq!(fit.c_sq, ref_fit.c_sq);
        }
    }

    #[test]
    fn analytic_examples() {
        assert_eq!(xi_f_analytic(&gas(1, 1.0, 1.0, 0.0)).unwrap(), 0.125);
        assert_eq!(xi_f_analytic(&gas(1, 1.0, 1.0, 0.5)).unwrap(), 0.25);
        assert_eq!(xi_f_analytic(&gas(3, 2.0, 2.0, 0.0)).unwrap(), 0.09375);
        assert_eq!(xi_f_amplitude_analytic(&gas(1, 1.0, 1.0, 0.0)).unwrap(), 0.0625);
        assert!(xi_f_analytic(&gas(1, 1.0, 0.0, 0.0)).is_err());
        assert!(xi_f_from_ratio(1.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn ratio_form_agrees_with_analytic() {
        let p = BosonGasParams { particles: 3, charge: 2.5, field: 1.7, beta: -0.9, ..Default::default() };
        let a = xi_f_analytic(&p).unwrap();
        let b = xi_f_from_ratio(3.0, p.beta * p.beta / p.charge, p.field).unwrap();
        assert!((a - b).abs() < 1e-14 * a);
    }
}
