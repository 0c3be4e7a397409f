//! Bulk/boundary dictionary for the z = 4 geometry.
//!
//! With `Q̃ = H`, matching the `H⁻²` and `H⁻³` terms of the two
//! susceptibilities fixes the particle count and the ratio `β²/q`:
//!
//! ```text
//! N     = -16√5 L² r₊² / (48π G L³ √(-ξ))
//! β²/q  = 3 / (8 L² ξ)
//! ```
//!
//! Both come out negative whenever `ξ < 0`. The matcher reports that instead
//! of rejecting the point.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::boundary::xi_f_from_ratio;
use crate::bulk::BulkParams;
use crate::error::{Error, Result};
use crate::volume::xi_f_holo_z4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchedParameters {
    pub particles: f64,
    /// Only the ratio is fixed; `q` alone is not extractable.
    pub beta_sq_over_q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignFlag {
    NegativeN,
    NegativeBetaSqOverQ,
    /// `ξ < 0`, which forces both of the above.
    NegativeXi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub matched: MatchedParameters,
    pub xi_f_bulk: f64,
    pub xi_f_boundary: f64,
    /// `|bulk - boundary| / max(|bulk|, |boundary|)`.
    pub relative_residual: f64,
    pub flags: Vec<SignFlag>,
    pub xi: f64,
    pub params: BulkParams,
}

pub fn match_parameters(p: &BulkParams) -> Result<MatchedParameters> {
    const OP: &str = "match_parameters";
    p.validate(OP)?;
    if !(p.xi < 0.0) {
        return Err(Error::domain(OP, format!("ξ = {} must be negative", p.xi)));
    }
    let l = p.ads_radius;
    let particles = -16.0 * 5f64.sqrt() * l * l * p.horizon.powi(2) / (48.0 * PI * p.newton * l.powi(3) * (-p.xi).sqrt());
    let beta_sq_over_q = 3.0 / (8.0 * l * l * p.xi);
    Ok(MatchedParameters { particles, beta_sq_over_q })
}

/// Match, then compare both susceptibilities at `H = Q̃`.
pub fn verify_duality(p: &BulkParams) -> Result<DualityReport> {
    evaluate(p, match_parameters(p)?)
}

/// Compare the bulk susceptibility with the boundary closed form evaluated
/// at the supplied (possibly perturbed) dictionary values.
pub fn evaluate(p: &BulkParams, matched: MatchedParameters) -> Result<DualityReport> {
    let xi_f_bulk = xi_f_holo_z4(p)?;
    let xi_f_boundary = xi_f_from_ratio(matched.particles, matched.beta_sq_over_q, p.charge)?;
    let scale = xi_f_bulk.abs().max(xi_f_boundary.abs());
    let relative_residual = if scale == 0.0 { 0.0 } else { (xi_f_bulk - xi_f_boundary).abs() / scale };
    let mut report = DualityReport {
        matched,
        xi_f_bulk,
        xi_f_boundary,
        relative_residual,
        flags: Vec::new(),
        xi: p.xi,
        params: *p,
    };
    report.flags = consistency_flags(&report);
    Ok(report)
}

pub fn consistency_flags(report: &DualityReport) -> Vec<SignFlag> {
    let mut flags = Vec::new();
    if report.matched.particles < 0.0 {
        flags.push(SignFlag::NegativeN);
    }
    if report.matched.beta_sq_over_q < 0.0 {
        flags.push(SignFlag::NegativeBetaSqOverQ);
    }
    if report.xi < 0.0 {
        flags.push(SignFlag::NegativeXi);
    }
    flags
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> BulkParams {
        BulkParams::z4(1.0, -1.0, 1.0, 0.0, 1.0, 1.0)
    }

    #[test]
    fn match_examples() {
        let m = match_parameters(&unit()).unwrap();
        assert!((m.particles + 16.0 * 5f64.sqrt() / (48.0 * PI)).abs() < 1e-15);
        assert!((m.particles + 0.237_269).abs() < 3e-5);
        assert_eq!(m.beta_sq_over_q, -0.375);
        let m2 = match_parameters(&BulkParams { horizon: 2.0, ..unit() }).unwrap();
        assert!((m2.particles - 4.0 * m.particles).abs() < 1e-15);
        assert!(matches!(match_parameters(&BulkParams { xi: 1.0, ..unit() }), Err(Error::Domain { .. })));
    }

    #[test]
    fn verify_examples() {
        let r = verify_duality(&unit()).unwrap();
        assert!(r.relative_residual <= 1e-10, "{r:?}");
        assert_eq!(r.flags, vec![SignFlag::NegativeN, SignFlag::NegativeBetaSqOverQ, SignFlag::NegativeXi]);

        let m = match_parameters(&unit()).unwrap();
        let bumped = MatchedParameters { particles: 1.01 * m.particles, ..m };
        let r = evaluate(&unit(), bumped).unwrap();
        assert!(r.relative_residual > 1e-3, "{r:?}");

        for q in [1.0, 2.0, 5.0, 10.0] {
            let r = verify_duality(&BulkParams { charge: q, ..unit() }).unwrap();
            assert!(r.relative_residual <= 1e-10, "Q̃ = {q}: {r:?}");
        }
    }

    #[test]
    fn flags_use_strict_inequalities() {
        let mut r = verify_duality(&unit()).unwrap();
        r.matched.particles = 0.0;
        r.matched.beta_sq_over_q = 0.0;
        r.xi = 0.0;
        assert!(consistency_flags(&r).is_empty());
    }
}
