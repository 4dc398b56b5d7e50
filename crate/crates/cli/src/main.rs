mod config;
mod report;
mod run;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command};

// Exit codes: 0 success, 1 config error, 2 numerical failure,
// 3 verification failure.
const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_VERIFY: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    init_threads();

    let outcome = match &cli.command {
        Command::Trajectory(args) => run::trajectory(args),
        Command::Sweep(args) => run::sweep(args),
        Command::Regimes(args) => run::regimes(args),
        Command::Verify(args) => verify::run(args),
    };

    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fragcorr: {e}");
            ExitCode::from(match e {
                run::CliError::Config(_) => EXIT_CONFIG,
                run::CliError::Numerical(_) | run::CliError::Io(_) => EXIT_NUMERICAL,
                run::CliError::Verification { .. } => EXIT_VERIFY,
            })
        }
    }
}

/// FRAGCORR_THREADS=k caps the worker pool; k = 1 drops to the sequential
/// path entirely.
fn init_threads() {
    if let Ok(v) = std::env::var("FRAGCORR_THREADS") {
        if let Ok(k) = v.trim().parse::<usize>() {
            if k <= 1 {
                fragcorr::parallel::set_sequential(true);
            } else {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}
