//! Complexity of the deformed geometry minus that of the horizonless
//! background at a shared cutoff, followed to large cutoff.

use lifshitz_fidelity::bulk::BulkParams;
use lifshitz_fidelity::quadrature::QuadratureSpec;
use lifshitz_fidelity::volume::{background_volume, complexity, regularize, regularized_complexity, volume_exact};

fn main() -> lifshitz_fidelity::Result<()> {
    let p = BulkParams::z4(1.0, -2.0, 1.0, 0.0, 1.0, 1.0);
    let spec = QuadratureSpec::default();

    println!("{:>8} {:>16} {:>16} {:>16}", "r_∞/r₊", "deformed", "background", "difference");
    for ratio in [5.0, 20.0, 100.0, 400.0] {
        let r_inf = ratio * p.horizon;
        let deformed = complexity(&volume_exact(&p, r_inf, &spec)?, &p)?;
        let background = complexity(&background_volume(&p, r_inf, &spec)?, &p)?;
        let diff = regularize(&deformed, &background)?;
        println!("{ratio:>8} {:>16.8} {:>16.8} {diff:>16.10}", deformed.value, background.value);
    }

    // subtraction at mismatched cutoffs is refused
    let a = complexity(&volume_exact(&p, 10.0, &spec)?, &p)?;
    let b = complexity(&background_volume(&p, 11.0, &spec)?, &p)?;
    println!();
    println!("mismatched cutoffs: {}", regularize(&a, &b).unwrap_err());
    println!("convenience call at 1000 r₊: {:.10}", regularized_complexity(&p, 1000.0, &spec)?);
    Ok(())
}
