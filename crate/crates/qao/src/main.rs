use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qao::cli;
use qao::Error;

#[derive(Parser)]
#[command(
    name = "qao",
    about = "Quantum autonomous oscillator in the hard excitation regime",
    version
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Populations over a gamma grid, analytic and optionally numeric
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        gamma_min: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = 1e-3)]
        eps1: f64,
        /// Also solve the master equation at each grid point
        #[arg(long)]
        numeric: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Stationary state of the master equation from a config file
    Steady {
        #[arg(long)]
        config: PathBuf,
        /// Fock cutoff; adaptive when absent
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Relaxation of a low-lying mixed state toward the stationary state
    Evolve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        tfinal: f64,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Soft-excitation oscillator populations
    Soft {
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classical trajectory of the amplitude equation
    Classical {
        #[arg(long)]
        config: PathBuf,
        /// Initial condition as re,im
        #[arg(long, default_value = "1,0")]
        z0: String,
        #[arg(long, default_value_t = 100.0)]
        tfinal: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(args: Args) -> qao::Result<()> {
    match args.command {
        Command::Sweep {
            gamma_min,
            gamma_max,
            steps,
            eps1,
            numeric,
            out,
        } => cli::cmd_sweep(gamma_min, gamma_max, steps, eps1, numeric, &out),
        Command::Steady {
            config,
            cutoff,
            out,
        } => cli::cmd_steady(&config, cutoff, &out),
        Command::Evolve {
            config,
            tfinal,
            cutoff,
            out,
        } => cli::cmd_evolve(&config, tfinal, cutoff, &out),
        Command::Soft { nu, nmax, out } => cli::cmd_soft(nu, nmax, &out),
        Command::Classical {
            config,
            z0,
            tfinal,
            out,
        } => {
            let z0 = cli::parse_complex(&z0)?;
            cli::cmd_classical(&config, z0, tfinal, &out)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parse { .. } | Error::MissingKey { .. } | Error::InvalidParameter(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(3),
            }
        }
    }
}
