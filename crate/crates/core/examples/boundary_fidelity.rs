//! Fidelity of a charged boson gas under a small change of the magnetic field,
//! and the susceptibility read off from it two ways.

use lifshitz_fidelity::boundary::{
    default_fit_samples, fidelity, xi_f_amplitude_analytic, xi_f_analytic, xi_f_from_fit, BosonGasParams,
};

fn main() -> lifshitz_fidelity::Result<()> {
    let gas = BosonGasParams { particles: 4, charge: 1.5, field: 2.0, beta: 0.7, ..Default::default() };

    println!("{:>10} {:>18}", "dH/H", "F(H, H + dH)");
    for frac in [1e-3, 1e-2, 5e-2, 0.2] {
        println!("{frac:>10.0e} {:>18.12}", fidelity(&gas, frac * gas.field)?);
    }

    let fit = xi_f_from_fit(&gas, &default_fit_samples(gas.field))?;
    println!();
    println!("closed form, squared overlap : {:.12}", xi_f_analytic(&gas)?);
    println!("least-squares fit            : {:.12} (residual {:.1e})", fit.c_sq, fit.residual_sq);
    println!("closed form, amplitude       : {:.12}", xi_f_amplitude_analytic(&gas)?);
    println!("least-squares fit, amplitude : {:.12}", fit.c_amp);
    Ok(())
}
