//! Composite quadrature with refinement-based error estimates.
//!
//! Integrands are fallible so that geometric checks (a blackening function
//! turning negative, an imaginary square root) surface as typed errors from
//! inside the sum instead of as NaNs afterwards.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points per Gauss-Legendre panel.
const GAUSS_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Composite Simpson, Richardson-extrapolated across the last two levels.
    Simpson,
    /// Composite 8-point Gauss-Legendre. Open rule: endpoints are never sampled.
    GaussLegendre,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simpson" => Ok(Scheme::Simpson),
            "gauss-legendre" | "gauss" => Ok(Scheme::GaussLegendre),
            other => Err(Error::Config(format!("unknown quadrature scheme `{other}`"))),
        }
    }
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Simpson => "simpson",
            Scheme::GaussLegendre => "gauss-legendre",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    /// Subintervals at the coarsest level (even, at least 64).
    pub panels: usize,
    /// Exponent `p` of the endpoint map `x = a + (b - a) s^p`.
    pub endpoint_exponent: f64,
    /// Number of levels, each doubling the panel count. At least 2.
    pub refinement_levels: usize,
    /// Relative tolerance on the error estimate.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            scheme: Scheme::Simpson,
            panels: 2048,
            endpoint_exponent: 2.0,
            refinement_levels: 2,
            tolerance: 1e-8,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.panels < 64 {
            return Err(Error::Config(format!("panel count {} is below 64", self.panels)));
        }
        if self.scheme == Scheme::Simpson && !self.panels.is_multiple_of(2) {
            return Err(Error::Config(format!("Simpson needs an even panel count, got {}", self.panels)));
        }
        if self.refinement_levels < 2 {
            return Err(Error::Config("at least two refinement levels are required".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if !(self.endpoint_exponent >= 1.0) {
            return Err(Error::Config(format!(
                "endpoint exponent must be at least 1, got {}",
                self.endpoint_exponent
            )));
        }
        Ok(())
    }
}

/// An integral value with its refinement error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Behaviour of the integrand at the lower limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LowerEndpoint {
    /// Finite integrand.
    Regular,
    /// `f(x) ~ strength / sqrt(x - a)` as `x -> a`.
    InverseSqrt { strength: f64 },
}

/// Integrate `f` over `[a, b]` with no change of variables.
pub fn integrate<F>(op: &'static str, f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    refine(op, spec, |n| match spec.scheme {
        Scheme::Simpson => simpson(op, &f, a, b, n, None),
        Scheme::GaussLegendre => gauss_legendre(op, &f, a, b, n),
    })
}

/// Integrate `f` over `[a, b]` after the endpoint map `x = a + (b - a) s^p`,
/// which turns an inverse-square-root singularity at `a` into a smooth
/// integrand in `s` for `p = 2`.
pub fn integrate_endpoint<F>(
    op: &'static str,
    f: F,
    a: f64,
    b: f64,
    lower: LowerEndpoint,
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let span = b - a;
    let p = spec.endpoint_exponent;
    let g = |s: f64| -> Result<f64> {
        let x = a + span * s.powf(p);
        Ok(p * span * s.powf(p - 1.0) * f(x)?)
    };

    // Value of the substituted integrand at s = 0, where f itself may blow up.
    let start = match lower {
        LowerEndpoint::Regular if p > 1.0 => Some(0.0),
        LowerEndpoint::Regular => None,
        LowerEndpoint::InverseSqrt { strength } => {
            if p == 2.0 {
                Some(2.0 * span.abs().sqrt() * span.signum() * strength)
            } else if p > 2.0 {
                Some(0.0)
            } else if spec.scheme == Scheme::Simpson {
                return Err(Error::Singularity {
                    op,
                    detail: format!("endpoint exponent {p} leaves the substituted integrand unbounded at the lower limit"),
                });
            } else {
                None
            }
        }
    };

    refine(op, spec, |n| match spec.scheme {
        Scheme::Simpson => simpson(op, &g, 0.0, 1.0, n, start),
        Scheme::GaussLegendre => gauss_legendre(op, &g, 0.0, 1.0, n),
    })
}

fn refine<R>(op: &'static str, spec: &QuadratureSpec, mut rule: R) -> Result<Estimate>
where
    R: FnMut(usize) -> Result<f64>,
{
    let mut levels = Vec::with_capacity(spec.refinement_levels);
    let mut n = spec.panels;
    for _ in 0..spec.refinement_levels {
        levels.push(rule(n)?);
        n *= 2;
    }
    let fine = levels[levels.len() - 1];
    let coarse = levels[levels.len() - 2];
    let (value, error) = match spec.scheme {
        Scheme::Simpson => (fine + (fine - coarse) / 15.0, (fine - coarse).abs() / 15.0),
        Scheme::GaussLegendre => (fine, (fine - coarse).abs()),
    };
    if !value.is_finite() {
        return Err(Error::Convergence { op, detail: "non-finite integral".into() });
    }
    if error > spec.tolerance * value.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::Convergence {
            op,
            detail: format!("error estimate {error:e} exceeds relative tolerance {:e} of {value:e}", spec.tolerance),
        });
    }
    Ok(Estimate { value, error })
}

fn checked(op: &'static str, x: f64, y: f64) -> Result<f64> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { op, x })
    }
}

fn simpson<F>(op: &'static str, f: &F, a: f64, b: f64, n: usize, start: Option<f64>) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = (b - a) / n as f64;
    let first = match start {
        Some(v) => v,
        None => checked(op, a, f(a)?)?,
    };
    let mut sum = first + checked(op, b, f(b)?)?;
    for i in 1..n {
        let x = a + h * i as f64;
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * checked(op, x, f(x)?)?;
    }
    Ok(sum * h / 3.0)
}

fn gauss_legendre<F>(op: &'static str, f: &F, a: f64, b: f64, n: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (nodes, weights) = legendre_rule(GAUSS_ORDER);
    let h = (b - a) / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let mid = a + h * (i as f64 + 0.5);
        for (t, w) in nodes.iter().zip(&weights) {
            let x = mid + 0.5 * h * t;
            sum += w * checked(op, x, f(x)?)?;
        }
    }
    Ok(sum * 0.5 * h)
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `P_n(x)` and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(scheme: Scheme) -> QuadratureSpec {
        QuadratureSpec { scheme, panels: 64, ..Default::default() }
    }

    #[test]
    fn legendre_rule_integrates_degree_fifteen_exactly() {
        let (x, w) = legendre_rule(8);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m14: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((m14 - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn polynomial_is_exact_under_both_schemes() {
        for scheme in [Scheme::Simpson, Scheme::GaussLegendre] {
            let est = integrate("t", |x| Ok(x * x), 1.0, 2.0, &spec(scheme)).unwrap();
            assert!((est.value - 7.0 / 3.0).abs() < 1e-13, "{scheme:?}: {}", est.value);
        }
    }

    #[test]
    fn inverse_sqrt_endpoint() {
        // integral of 1/sqrt(x) over [0, 4] is 4
        let lower = LowerEndpoint::InverseSqrt { strength: 1.0 };
        for scheme in [Scheme::Simpson, Scheme::GaussLegendre] {
            let est = integrate_endpoint("t", |x| Ok(1.0 / x.sqrt()), 0.0, 4.0, lower, &spec(scheme)).unwrap();
            assert!((est.value - 4.0).abs() < 1e-12, "{scheme:?}: {}", est.value);
        }
    }

    #[test]
    fn simpson_rejects_unbounded_substitution() {
        let lower = LowerEndpoint::InverseSqrt { strength: 1.0 };
        let s = QuadratureSpec { endpoint_exponent: 1.0, ..spec(Scheme::Simpson) };
        let err = integrate_endpoint("t", |x| Ok(1.0 / x.sqrt()), 0.0, 1.0, lower, &s).unwrap_err();
        assert!(matches!(err, Error::Singularity { .. }));
    }

    #[test]
    fn invalid_specs() {
        let bad = [
            QuadratureSpec { panels: 32, ..Default::default() },
            QuadratureSpec { panels: 101, ..Default::default() },
            QuadratureSpec { refinement_levels: 1, ..Default::default() },
            QuadratureSpec { tolerance: 0.0, ..Default::default() },
        ];
        for s in bad {
            assert!(s.validate().is_err(), "{s:?}");
        }
    }

    #[test]
    fn integrand_errors_propagate() {
        let err = integrate(
            "t",
            |x| if x > 0.5 { Err(Error::domain("t", "boom")) } else { Ok(1.0) },
            0.0,
            1.0,
            &spec(Scheme::Simpson),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn stalled_refinement_is_reported() {
        // A jump keeps Simpson at first order, far from a 1e-14 tolerance.
        let s = QuadratureSpec { tolerance: 1e-14, ..spec(Scheme::Simpson) };
        let err = integrate("t", |x| Ok(if x < 0.3 { 0.0 } else { 1.0 }), 0.0, 1.0, &s).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }
}
