//! Matching the bulk susceptibility to the boson gas: the induced particle
//! number and momentum ratio, and the sign constraints they carry.

use lifshitz_fidelity::boundary::xi_f_from_ratio;
use lifshitz_fidelity::bulk::BulkParams;
use lifshitz_fidelity::duality::{match_parameters, verify_duality};
use lifshitz_fidelity::volume::xi_f_holo_z4;

fn main() -> lifshitz_fidelity::Result<()> {
    println!("{:>6} {:>6} {:>14} {:>14} {:>14} {:>10}", "ξ", "Q̃", "N", "β²/q", "Ξ_F", "residual");
    for (xi, charge) in [(-1.0, 1.0), (-0.1, 1.0), (-0.1, 3.0), (-2.0, 0.5)] {
        let p = BulkParams::z4(1.0, xi, charge, 0.0, 1.0, 1.0);
        let report = verify_duality(&p)?;
        println!(
            "{xi:>6} {charge:>6} {:>14.8} {:>14.8} {:>14.8} {:>10.1e}",
            report.matched.particles, report.matched.beta_sq_over_q, report.xi_f_bulk, report.relative_residual
        );
    }

    let p = BulkParams::z4(1.0, -1.0, 1.0, 0.0, 1.0, 1.0);
    let m = match_parameters(&p)?;
    println!();
    println!("bulk     Ξ_F = {:.15}", xi_f_holo_z4(&p)?);
    println!("boundary Ξ_F = {:.15}", xi_f_from_ratio(m.particles, m.beta_sq_over_q, p.charge)?);
    println!("flags: {:?}", verify_duality(&p)?.flags);
    println!("ξ > 0: {}", match_parameters(&BulkParams { xi: 0.5, ..p }).unwrap_err());
    Ok(())
}
