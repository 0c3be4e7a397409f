//! Lowest Landau level: the Gaussian ground state against a finite-difference
//! eigenvalue of the same one-dimensional operator.

use lifshitz_fidelity::boundary::{ground_state, oscillator_spectrum_oracle, BosonGasParams, GridSpec};

fn main() -> lifshitz_fidelity::Result<()> {
    let grid = GridSpec::default();
    println!("{:>6} {:>6} {:>6} {:>6} {:>16} {:>16} {:>10}", "q", "H", "beta", "k", "E0", "eigenvalue", "rel err");
    for (charge, field, beta, k) in [(1.0, 1.0, 0.0, 0.0), (2.0, 0.5, 1.0, 0.0), (0.5, 3.0, -2.0, 1.5), (1.0, 10.0, 4.0, 2.0)] {
        let gas = BosonGasParams { charge, field, beta, k, ..Default::default() };
        let state = ground_state(&gas)?;
        let numeric = oscillator_spectrum_oracle(&gas, &grid)?;
        let err = (numeric - state.energy).abs() / state.energy;
        println!("{charge:>6} {field:>6} {beta:>6} {k:>6} {:>16.10} {numeric:>16.10} {err:>10.1e}", state.energy);
    }

    let state = ground_state(&BosonGasParams { beta: 1.0, ..Default::default() })?;
    println!();
    println!("orbit centre {:.3}, width {:.3}", state.center, state.sigma());
    for x in [-1.0, 0.0, 1.0, 2.0, 3.0] {
        println!("  phi0({x:>4}) = {:.6}", state.wavefunction(x));
    }
    Ok(())
}
