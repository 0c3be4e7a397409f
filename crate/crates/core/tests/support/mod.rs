//! Reference values computed without the library: closed forms written out
//! directly and a double-exponential quadrature that tolerates endpoint
//! singularities.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Tanh-sinh quadrature on `[a, b]`. The integrand receives `x`, `x - a` and
/// `b - x`, the latter two computed without cancellation so that
/// `1/√(x - a)`-type singularities can be evaluated right up to the ends.
pub fn tanh_sinh(f: impl Fn(f64, f64, f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let len = b - a;
    let sigma = |y: f64| 1.0 / (1.0 + (-y).exp());
    let term = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let from_a = len * sigma(2.0 * u);
        let from_b = len * sigma(-2.0 * u);
        if from_a <= 0.0 || from_b <= 0.0 {
            return 0.0;
        }
        let weight = len * PI * t.cosh() * sigma(2.0 * u) * sigma(-2.0 * u);
        let x = if from_a < from_b { a + from_a } else { b - from_b };
        let v = weight * f(x, from_a, from_b);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let t_max = 6.5;
    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        sum += term(k as f64 * h) + term(-(k as f64) * h);
        k += 1;
    }
    let mut estimate = h * sum;
    for _ in 0..12 {
        h *= 0.5;
        // only the new odd nodes
        let mut k = 1;
        while k as f64 * h <= t_max {
            sum += term(k as f64 * h) + term(-(k as f64) * h);
            k += 2;
        }
        let next = h * sum;
        if (next - estimate).abs() <= tol * next.abs().max(1e-300) {
            return next;
        }
        estimate = next;
    }
    panic!("tanh-sinh did not reach {tol:e}; last estimate {estimate}");
}

/// `∫ φ_a(x - xa) φ_b(x - xb) dx` for normalized Gaussians `(a/π)^{1/4} e^{-a x²/2}`.
pub fn gaussian_overlap(a: f64, xa: f64, b: f64, xb: f64) -> f64 {
    (a * b).powf(0.25) * (2.0 / (a + b)).sqrt() * (-a * b * (xa - xb).powi(2) / (2.0 * (a + b))).exp()
}

/// Squared-overlap susceptibility of `N` bosons: `N (qH + 4β²)/(8 q H³)`.
pub fn susceptibility(particles: f64, charge: f64, field: f64, beta: f64) -> f64 {
    particles * (charge * field + 4.0 * beta * beta) / (8.0 * charge * field.powi(3))
}

/// Ground energy `(qH + k²)/(2m)`.
pub fn landau_ground_energy(charge: f64, mass: f64, field: f64, k: f64) -> f64 {
    (charge * field + k * k) / (2.0 * mass)
}

/// Bulk point written out in the raw couplings.
#[derive(Debug, Clone, Copy)]
pub struct Bulk {
    pub ads_radius: f64,
    pub xi: f64,
    pub charge: f64,
    pub potential: f64,
    pub z: f64,
    pub horizon: f64,
}

impl Bulk {
    pub fn lambda(&self) -> f64 {
        -3.0 / (self.ads_radius * self.ads_radius)
    }

    fn shifted(&self) -> f64 {
        self.lambda() + self.charge * self.charge * self.xi
    }

    /// `B(r)` straight from the solution.
    pub fn blackening(&self, r: f64) -> f64 {
        let c0 = 2.0 / (2.0 + self.z) * self.potential / 2.0;
        let c2 = 2.0 * self.shifted() / (6.0 + self.z);
        c0 + (self.horizon / r).powf(1.0 + self.z / 2.0) * (c2 * self.horizon.powi(2) - c0) - c2 * r * r
    }

    /// z = 4 coefficients `(b₁, b₋₂)`.
    pub fn z4_coefficients(&self) -> (f64, f64) {
        let r2 = self.horizon * self.horizon;
        (self.shifted() / 5.0 * r2 - self.potential / 6.0, r2 * self.shifted() / 5.0)
    }

    /// Finite and `ε⁻²` parts of the z = 4 closed form.
    pub fn series(&self, eps: f64) -> (f64, f64) {
        let (b1, bm2) = self.z4_coefficients();
        let k = -bm2;
        let r3 = self.horizon.powi(3);
        (r3 * (-b1 / (6.0 * k.powf(1.5)) - 0.5 / k.sqrt()), r3 / (2.0 * eps * eps * k.sqrt()))
    }
}

/// `√5 r₊² √(-ξ) (2L²ξQ̃ + 3) / (48π G L³ ξ² Q̃³)`.
pub fn holographic_susceptibility(horizon: f64, xi: f64, ads_radius: f64, newton: f64, charge: f64) -> f64 {
    let l = ads_radius;
    5f64.sqrt() * horizon * horizon * (-xi).sqrt() * (2.0 * l * l * xi * charge + 3.0)
        / (48.0 * PI * newton * l.powi(3) * xi * xi * charge.powi(3))
}

/// Ordinary least-squares slope.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}
