//! The built-in invariant suite, clean and with one check sabotaged.

use lifshitz_fidelity::verify::{run_suite, VerifyOptions};

fn main() -> lifshitz_fidelity::Result<()> {
    let clean = run_suite(&VerifyOptions::default())?;
    print!("{}", clean.table());
    println!("all passed: {}", clean.all_passed());

    let faulty = run_suite(&VerifyOptions { inject_fault: Some("bulk.horizon_identity".into()), ..Default::default() })?;
    for check in faulty.failures() {
        println!("caught: {} (deviation {:e} > {:e})", check.name, check.deviation, check.tolerance);
    }
    Ok(())
}
