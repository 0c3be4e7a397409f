//! Maximal time-slice volume: direct radial quadrature, the inverse-radius
//! form, and the closed-form leading series.

use lifshitz_fidelity::bulk::BulkParams;
use lifshitz_fidelity::quadrature::{QuadratureSpec, Scheme};
use lifshitz_fidelity::volume::{fit_divergence, leading_divergence, volume_exact, volume_series_z4, volume_w_form, VolumeMode};

fn main() -> lifshitz_fidelity::Result<()> {
    let p = BulkParams::z4(1.0, -2.0, 1.0, 0.0, 1.0, 1.0);

    println!("{:>8} {:>18} {:>18} {:>18}", "eps", "radial", "w-form", "series");
    for eps in [0.2, 0.1, 0.05, 0.01] {
        let spec = QuadratureSpec::default();
        let exact = volume_exact(&p, p.horizon / eps, &spec)?;
        let w = volume_w_form(&p, eps, VolumeMode::FullB, &spec)?;
        let series = volume_series_z4(&p, eps)?;
        println!("{eps:>8} {:>18.10} {:>18.10} {:>18.10}", exact.value, w.value, series.value);
    }

    let gl = QuadratureSpec { scheme: Scheme::GaussLegendre, ..Default::default() };
    let est = volume_exact(&p, 100.0, &gl)?;
    println!();
    println!("Gauss-Legendre at r_∞ = 100: {:.12} ± {:.1e}", est.value, est.error_estimate);

    let samples = [0.004, 0.005, 0.006, 0.008, 0.01, 0.012, 0.015, 0.02];
    let fit = fit_divergence(&p, VolumeMode::FullB, &samples, &QuadratureSpec::default())?;
    println!("fitted ε⁻² coefficient {:.8}, analytic {:.8}", fit.leading, leading_divergence(&p)?);
    Ok(())
}
