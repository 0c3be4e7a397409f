//! The Lifshitz black-hole blackening factor: horizon root, z = 4
//! coefficients and consistency notes.

use lifshitz_fidelity::bulk::{blackening, lifshitz_exponent, series_coeffs_z4, BulkParams};

fn main() -> lifshitz_fidelity::Result<()> {
    let p = BulkParams::z4(1.0, -2.0, 1.0, 0.0, 1.0, 1.0);
    println!("Λ + Q̃²ξ = {}", p.effective_lambda());
    println!("B(r₊)   = {:e}", blackening(p.horizon, &p)?);
    println!("notes   = {:?}", p.diagnostics());
    println!();

    println!("{:>8} {:>16}", "r/r₊", "B(r)");
    for s in [1.0, 1.1, 1.5, 2.0, 5.0, 10.0] {
        println!("{s:>8} {:>16.8}", blackening(s * p.horizon, &p)?);
    }

    let c = series_coeffs_z4(&p)?;
    println!();
    println!("b₁ = {}, b₋₂ = {}", c.b1, c.b_minus2);

    // the exponent implied by the couplings, when ξ is chosen to give z = 4
    let lambda = -3.0;
    let xi = -lambda / 2.0;
    println!("z(Q̃ = 1, ξ = {xi}, Λ = {lambda}) = {}", lifshitz_exponent(1.0, xi, lambda)?);
    Ok(())
}
