//! Driving the command-line front end in-process: a logarithmic sweep of the
//! bulk charge written as CSV to stdout.

use lifshitz_fidelity::cli::main_with;

fn main() {
    let args = ["lifshitz-fidelity", "sweep", "--axis", "Q", "--from", "1", "--to", "10", "--points", "6", "--log"];
    let code = main_with(args.iter().map(Into::into).collect(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
