//! Finite-difference ground energy of the Landau-gauge `x` equation.
//!
//! The operator
//!
//! ```text
//! (1/2m) [ -d²/dx² + q²H²x² - 2qβHx + k² + β² ]
//! ```
//!
//! is discretized with second-order central differences and Dirichlet walls.
//! The matrix is symmetric tridiagonal, so the lowest eigenvalue comes from
//! Sturm-sequence bisection without forming the dense matrix.

use super::{ground_state, BosonGasParams, GridSpec};
use crate::error::{Error, Result};

const OP: &str = "oscillator_spectrum_oracle";

/// Lowest eigenvalue of the discretized operator, Richardson-extrapolated
/// over the last two refinement levels.
pub fn oscillator_spectrum_oracle(p: &BosonGasParams, grid: &GridSpec) -> Result<f64> {
    grid.validate(OP, 2000)?;
    if grid.refinement_levels < 2 {
        return Err(Error::Config("eigenvalue oracle needs at least two refinement levels".into()));
    }
    let state = ground_state(p)?;
    let half = grid.half_width * state.sigma();
    let (lo, hi) = (state.center - half, state.center + half);

    let mut energies = Vec::with_capacity(grid.refinement_levels);
    let mut interior = grid.points;
    for _ in 0..grid.refinement_levels {
        energies.push(lowest_eigenvalue(p, lo, hi, interior));
        interior = 2 * interior + 1;
    }
    let fine = energies[energies.len() - 1];
    let coarse = energies[energies.len() - 2];
    if (fine - coarse).abs() > grid.tolerance * fine.abs() {
        return Err(Error::Convergence {
            op: OP,
            detail: format!("refinements differ: {coarse} vs {fine}"),
        });
    }
    // second-order error halves twice per refinement
    Ok((4.0 * fine - coarse) / 3.0)
}

fn lowest_eigenvalue(p: &BosonGasParams, lo: f64, hi: f64, interior: usize) -> f64 {
    let h = (hi - lo) / (interior + 1) as f64;
    let inv2m = 0.5 / p.mass;
    let qh = p.charge * p.field;
    let shift = p.k * p.k + p.beta * p.beta;
    let diag: Vec<f64> = (1..=interior)
        .map(|i| {
            let x = lo + h * i as f64;
            inv2m * (2.0 / (h * h) + qh * qh * x * x - 2.0 * p.beta * qh * x + shift)
        })
        .collect();
    let off = -inv2m / (h * h);

    let mut lower = diag.iter().fold(f64::INFINITY, |m, &d| m.min(d)) - 2.0 * off.abs();
    let mut upper = diag.iter().fold(f64::NEG_INFINITY, |m, &d| m.max(d)) + 2.0 * off.abs();
    for _ in 0..200 {
        let mid = 0.5 * (lower + upper);
        if mid <= lower || mid >= upper {
            break;
        }
        if count_below(&diag, off, mid) >= 1 {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    0.5 * (lower + upper)
}

/// Number of eigenvalues strictly below `lambda` (Sturm count).
fn count_below(diag: &[f64], off: f64, lambda: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - lambda } else { d - lambda - off2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + off.abs());
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}
