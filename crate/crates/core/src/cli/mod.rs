//! Command-line front end.
//!
//! ```text
//! lifshitz-fidelity <boundary|bulk|match|sweep|verify> [--config PATH] [--key value]...
//!                   [--out DIR] [--format csv|json] [--workers N]
//! ```
//!
//! Exit status is 0 on success, 1 for invalid input and 2 for a failed
//! computation or a failed invariant check.

mod config;
mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser};

pub use config::{Format, KeyValues, OutputOptions, RunConfig, Subcommand, SweepAxis, SWEEP_AXES};
pub use run::{run, Outcome, SWEEP_COLUMNS};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "lifshitz-fidelity", version, about = "Fidelity susceptibility from boundary overlaps and bulk maximal volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Subcommand)]
enum Command {
    /// Susceptibility of the boson gas: closed form and fitted from overlaps.
    Boundary(CommonArgs),
    /// Maximal volume, series volume and holographic susceptibility.
    Bulk(CommonArgs),
    /// Match bulk data to boundary parameters and compare susceptibilities.
    Match(CommonArgs),
    /// Evaluate every pipeline along one parameter axis.
    Sweep(CommonArgs),
    /// Run the invariant suite.
    Verify(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Flat TOML file, or a CSV/JSON artifact from an earlier run.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    /// Write artifacts into this directory instead of standard output.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "csv|json", default_value = "csv")]
    format: String,
    /// Threads used by sweeps.
    #[arg(long, env = "LF_WORKERS", value_name = "N")]
    workers: Option<usize>,
    /// Push the named check past its tolerance (verify only).
    #[arg(long = "inject-fault", value_name = "CHECK")]
    inject_fault: Option<String>,
}

macro_rules! param_args {
    ($($field:ident => $key:literal $(, aliases = [$($alias:literal),*])?, $help:literal;)*) => {
        #[derive(Debug, Args)]
        struct ParamArgs {
            $(
                #[arg(long = $key, value_name = "VALUE", allow_hyphen_values = true, help = $help $(, aliases = [$($alias),*])?)]
                $field: Option<String>,
            )*
            /// Logarithmic sweep spacing.
            #[arg(long)]
            log: bool,
        }

        impl ParamArgs {
            fn key_values(&self) -> Result<KeyValues> {
                let mut kv = KeyValues::default();
                $(
                    if let Some(v) = &self.$field {
                        kv.set($key, v.clone())?;
                    }
                )*
                if self.log {
                    kv.set("log", "true")?;
                }
                Ok(kv)
            }
        }
    };
}

param_args! {
    particles => "N", "Particle count N";
    charge => "q", "Boson charge q";
    mass => "m", "Boson mass m";
    field => "H", "Magnetic field H";
    beta => "beta", "Transverse momentum β";
    k => "k", "Longitudinal momentum k";
    ads_radius => "L", "Curvature scale L";
    cosmological_constant => "Lambda", "Λ [default: -3/L²]";
    xi => "xi", "Maxwell-dilaton coupling ξ";
    bulk_charge => "Q", aliases = ["Qt", "q_tilde", "Q̃"], "Bulk charge Q̃";
    potential => "V0", "Dilaton potential amplitude Ṽ₀";
    z => "z", "Dynamical exponent";
    horizon => "r_plus", "Horizon radius r₊";
    time_scale => "r0", "Lifshitz time normalization r₀";
    newton => "G", "Newton constant G";
    complexity_radius => "R", "Complexity radius R [default: L]";
    gamma => "gamma", "Dilaton coupling γ (stored only)";
    lambda => "lambda", "Dilaton coupling λ (stored only)";
    rinf_ratio => "rinf_ratio", "Radial cutoff r_∞/r₊";
    scheme => "scheme", "Volume quadrature: simpson or gauss-legendre";
    panels => "panels", "Quadrature panels";
    exponent => "exponent", "Endpoint substitution exponent";
    levels => "levels", "Quadrature refinement levels";
    tolerance => "tolerance", "Quadrature relative tolerance";
    grid_points => "grid_points", "Overlap grid points";
    grid_half_width => "grid_half_width", "Overlap grid half-width in σ";
    grid_levels => "grid_levels", "Eigenvalue refinement levels";
    grid_tolerance => "grid_tolerance", "Eigenvalue refinement tolerance";
    axis => "axis", "Sweep axis: q, m, H, beta, k, L, xi, Q, V0, z, r_plus, G, R or rinf_ratio";
    from => "from", "Sweep start";
    to => "to", "Sweep end";
    points => "points", "Sweep point count";
    seed => "seed", "Seed for randomized invariant checks";
}

/// Exit status for an error: 1 for bad input, 2 for a failed computation.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Io(_) => 1,
        _ => 2,
    }
}

fn parse_config(args: Vec<OsString>) -> std::result::Result<Result<RunConfig>, clap::Error> {
    let cli = Cli::try_parse_from(args)?;
    let (subcommand, common) = match cli.command {
        Command::Boundary(a) => (Subcommand::Boundary, a),
        Command::Bulk(a) => (Subcommand::Bulk, a),
        Command::Match(a) => (Subcommand::Match, a),
        Command::Sweep(a) => (Subcommand::Sweep, a),
        Command::Verify(a) => (Subcommand::Verify, a),
    };
    Ok((|| {
        let mut kv = match &common.config {
            Some(path) => KeyValues::from_file(path)?,
            None => KeyValues::default(),
        };
        kv.merge(common.params.key_values()?);
        if let Some(f) = &common.inject_fault {
            kv.set("inject_fault", f.clone())?;
        }
        let workers = common
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        let output = OutputOptions { out: common.out.clone(), format: common.format.parse()?, workers };
        RunConfig::resolve(subcommand, &kv, output)
    })())
}

/// Parse arguments, run, and report; returns the process exit status.
pub fn main_with(args: Vec<OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let config = match parse_config(args) {
        Ok(Ok(c)) => c,
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{}", e.render());
            return 1;
        }
        Err(e) => {
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    match run(&config) {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            for path in &outcome.written {
                let _ = writeln!(stderr, "wrote {}", path.display());
            }
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    main_with(std::env::args_os().collect(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
