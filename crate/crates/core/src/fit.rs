//! Linear least squares over a fixed set of basis functions.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    pub coefficients: Vec<f64>,
    /// Root-mean-square residual.
    pub rms_residual: f64,
}

/// Fit `y ≈ Σ c_j φ_j(x)` in the least-squares sense.
///
/// Columns are scaled to unit norm before the SVD solve, so basis functions
/// of very different magnitude (ε⁻² next to ε²) stay well conditioned.
pub fn least_squares(
    op: &'static str,
    xs: &[f64],
    ys: &[f64],
    basis: &[&dyn Fn(f64) -> f64],
) -> Result<LinearFit> {
    let rows = xs.len();
    let cols = basis.len();
    if rows != ys.len() || rows < cols {
        return Err(Error::IllConditionedFit {
            op,
            detail: format!("{rows} samples for {cols} basis functions"),
        });
    }
    let mut a = DMatrix::from_fn(rows, cols, |i, j| basis[j](xs[i]));
    let mut scale = vec![1.0; cols];
    for (j, s) in scale.iter_mut().enumerate() {
        let norm = a.column(j).norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::IllConditionedFit { op, detail: format!("basis column {j} is degenerate") });
        }
        *s = norm;
        a.column_mut(j).unscale_mut(norm);
    }
    let y = DVector::from_column_slice(ys);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= smax * 1e-13 {
        return Err(Error::IllConditionedFit { op, detail: format!("condition number {:e}", smax / smin) });
    }
    let sol = svd
        .solve(&y, 0.0)
        .map_err(|e| Error::IllConditionedFit { op, detail: e.to_string() })?;
    let resid = &y - &a * &sol;
    let rms_residual = (resid.norm_squared() / rows as f64).sqrt();
    let coefficients = sol.iter().zip(&scale).map(|(c, s)| c / s).collect();
    Ok(LinearFit { coefficients, rms_residual })
}

/// Ordinary least-squares slope of `y` against `x`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_polynomial() {
        let xs: Vec<f64> = (1..=6).map(|i| i as f64 * 0.01).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 / (x * x) + 2.0 * x.ln() - 1.0 + 5.0 * x * x).collect();
        let fit = least_squares(
            "t",
            &xs,
            &ys,
            &[&|x: f64| 1.0 / (x * x), &|x: f64| x.ln(), &|_| 1.0, &|x: f64| x * x],
        )
        .unwrap();
        let expect = [3.0, 2.0, -1.0, 5.0];
        for (c, e) in fit.coefficients.iter().zip(expect) {
            assert!((c - e).abs() < 1e-7 * e.abs().max(1.0), "{c} vs {e}");
        }
    }

    #[test]
    fn underdetermined_is_rejected() {
        let err = least_squares("t", &[1.0], &[1.0], &[&|_| 1.0, &|x: f64| x]).unwrap_err();
        assert!(matches!(err, Error::IllConditionedFit { .. }));
    }

    #[test]
    fn slope_of_line() {
        assert!((slope(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]) - 2.0).abs() < 1e-15);
    }
}
