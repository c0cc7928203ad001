//! `chs`: CHS norms of Hermitian and complex matrices from the command line.

mod commands;
mod input;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use chs_core::Method;
use clap::{Parser, Subcommand, ValueEnum};

use commands::Report;

#[derive(Parser, Debug)]
#[command(name = "chs", version, about = "CHS norms of Hermitian and complex matrices")]
struct Cli {
    /// Output style: aligned text or one JSON record.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute ||A||_d with one method.
    Norm {
        matrix: PathBuf,
        #[arg(long)]
        d: usize,
        /// Defaults to charpoly/spectrum for Hermitian input, words/detseries otherwise.
        #[arg(long, value_parser = parse_method)]
        method: Option<Method>,
        /// Lift floating-point entries to exact rationals before computing.
        #[arg(long)]
        exact: bool,
        /// Quadrature node count (default 2d+2).
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Print the coefficients of the generating series up to --d-max.
    Series {
        matrix: PathBuf,
        #[arg(long, default_value_t = 12)]
        d_max: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Run every applicable method and check that they agree.
    Compare {
        matrix: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Check the lower, upper and monotonicity bounds at degree d.
    Bounds {
        matrix: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Compare two graphs (edge lists or matrix files) by spectra and norms.
    Graph {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        d: Vec<usize>,
    },
    /// Trace of the k-th symmetric power, and the norm when it applies.
    Tensor {
        matrix: PathBuf,
        /// Power k.
        #[arg(long)]
        d: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Run the built-in verification cases.
    Selftest {
        #[arg(long, default_value_t = chs_core::suite::DEFAULT_SEED)]
        seed: u64,
        /// Case names, numbers or groups (repeatable, comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// List the cases without running them.
        #[arg(long)]
        list: bool,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse::<Method>().map_err(|_| {
        let names: Vec<_> = Method::ALL.iter().map(|m| m.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn run(command: Command) -> Result<Box<dyn Report>, String> {
    Ok(match command {
        Command::Norm { matrix, d, method, exact, nodes } => Box::new(commands::norm(&input::load(&matrix, exact)?, d, method, nodes)?),
        Command::Series { matrix, d_max, exact } => Box::new(commands::series(&input::load(&matrix, exact)?, d_max)?),
        Command::Compare { matrix, d, exact, nodes } => Box::new(commands::compare(&input::load(&matrix, exact)?, d, nodes)?),
        Command::Bounds { matrix, d, exact } => Box::new(commands::bounds(&input::load(&matrix, exact)?, d)?),
        Command::Graph { left, right, d } => {
            let (a, b) = input::load_pair(&left, &right)?;
            Box::new(commands::graph(&a, &b, &d)?)
        }
        Command::Tensor { matrix, d, exact } => Box::new(commands::tensor(&input::load(&matrix, exact)?, d)?),
        Command::Selftest { seed, only, list } => {
            if list {
                Box::new(selftest::list(&only))
            } else {
                Box::new(selftest::run(seed, &only)?)
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Human => print!("{}", report.human()),
                Format::Machine => println!("{}", report.machine()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
