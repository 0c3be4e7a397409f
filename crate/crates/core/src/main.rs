fn main() {
    std::process::exit(lifshitz_fidelity::cli::main());
}
