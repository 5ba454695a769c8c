use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coincidence::verify::{SuiteOptions, DEFAULT_CASES, DEFAULT_SEED};
use coincidence_cli::{commands, CliError, Scenario};

/// Coincidence rates of time-delayed photons in linear interferometers.
///
/// Thread count follows RAYON_NUM_THREADS; output never depends on it.
#[derive(Parser)]
#[command(name = "coincidence", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate, oracle cross-check, block layout and immanant terms for one scenario.
    Rate { config: PathBuf },
    /// Rate over a two-axis delay grid as CSV.
    Landscape {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// HOM sweep over the second delay, single- and multi-pair sources, as CSV.
    Hom {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reducing basis, immanant fits and the full term table.
    Decompose { config: PathBuf },
    /// Cross-check the pipeline against the oracle on a seeded suite, or on one scenario.
    Verify {
        config: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
        /// Negative control: perturb the reducing basis so the block check must fail.
        #[arg(long, hide = true)]
        corrupt_basis: bool,
    },
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| {
        CliError::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Rate { config } => print!("{}", commands::rate_report(&Scenario::load(&config)?)?),
        Command::Decompose { config } => {
            print!("{}", commands::decompose_report(&Scenario::load(&config)?)?)
        }
        Command::Landscape { config, out } => {
            write_file(&out, &commands::landscape_csv(&Scenario::load(&config)?)?)?
        }
        Command::Hom { config, out } => {
            write_file(&out, &commands::hom_csv(&Scenario::load(&config)?)?)?
        }
        Command::Verify {
            config,
            seed,
            cases,
            corrupt_basis,
        } => {
            let (report, passed) = match config {
                Some(path) => commands::verify_scenario(&Scenario::load(&path)?, corrupt_basis)?,
                None => commands::verify_suite(&SuiteOptions {
                    seed,
                    cases,
                    corrupt_basis,
                })?,
            };
            print!("{report}");
            if !passed {
                let failures = report
                    .lines()
                    .filter(|l| l.contains("status=fail") && l.starts_with("check="))
                    .count();
                let checks = report.lines().filter(|l| l.starts_with("check=")).count();
                return Err(CliError::Verify { failures, checks });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
