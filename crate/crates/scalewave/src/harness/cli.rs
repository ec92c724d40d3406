//! Command-line interface. Exit codes: 0 success, 1 config error,
//! 2 numeric failure, 3 disagreement found.

use super::commands::{
    classify_cmd, lindecay_cmd, load_or_default, resolve_out_dir, simulate_cmd, sweep_cmd,
    testfn_check_cmd, CmdContext,
};
use super::{HarnessError, RunConfig, EXIT_CONFIG};
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "scalewave",
    version,
    about = "Regime maps and desk-scale verification for weakly coupled scale-invariant wave systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single (p, q) pair and print the decay forecast.
    Classify {
        /// Path to the TOML (or JSON) run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (default: config, then $SCALEWAVE_OUT, then .)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Decide every predicate with exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// Sweep the (p, q) plane; writes CSV, SVG diagram and a JSON summary.
    Sweep {
        /// Path to the TOML (or JSON) run configuration.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        exact: bool,
        /// Worker count for the sweep pool.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Evolve the linear flow per frequency and fit decay rates.
    Lindecay {
        /// Path to the TOML (or JSON) run configuration.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the coupled finite-difference simulation and check the forecast.
    Simulate {
        /// Path to the TOML (or JSON) run configuration.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Self-checks of the test-function machinery.
    #[command(name = "testfn-check")]
    TestfnCheck {
        /// Optional run configuration (built-in reference coefficients otherwise).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parse `args` (including the program name) and run; returns the process
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        Command::Classify { config, out, exact } => {
            let cfg = RunConfig::load(&config)?;
            let ctx = ctx(cfg, out, exact, None);
            classify_cmd(&ctx)
        }
        Command::Sweep {
            config,
            out,
            exact,
            jobs,
        } => {
            let cfg = RunConfig::load(&config)?;
            let ctx = ctx(cfg, out, exact, jobs);
            sweep_cmd(&ctx)
        }
        Command::Lindecay { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let ctx = ctx(cfg, out, false, None);
            lindecay_cmd(&ctx)
        }
        Command::Simulate { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let ctx = ctx(cfg, out, false, None);
            simulate_cmd(&ctx)
        }
        Command::TestfnCheck { config, out } => {
            let cfg = load_or_default(config.as_deref())?;
            let ctx = ctx(cfg, out, false, None);
            testfn_check_cmd(&ctx)
        }
    }
}

fn ctx(config: RunConfig, out: Option<PathBuf>, exact: bool, jobs: Option<usize>) -> CmdContext {
    let out_dir = resolve_out_dir(out, &config);
    CmdContext {
        config,
        out_dir,
        exact,
        jobs,
    }
}
