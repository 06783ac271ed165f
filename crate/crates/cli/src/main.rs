mod commands;
mod failure;
mod io;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twinstate::properties::{DEFAULT_RESTARTS, DEFAULT_TOLERANCE};
use twinstate::states::{antisymmetrize, random_state, symmetrize};
use twinstate::{Execution, SingleParticleVector, Statistics, DEFAULT_COUNT_EPS};

use commands::{Analysis, Layout};
use failure::{Failure, EXIT_USAGE};

/// Entanglement analysis of pure two-particle states of identical fermions
/// or bosons.
#[derive(Parser)]
#[command(name = "twinstate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A single state file, or every `*.json` file in a directory.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// State file.
    path: Option<PathBuf>,
    /// Process every `*.json` file in this directory, one report per line.
    #[arg(long)]
    dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement verdict with the deciding rule.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Threshold for counting Slater/Schmidt coefficients as nonzero.
        #[arg(long = "tol", visible_alias = "eps-count", default_value_t = DEFAULT_COUNT_EPS)]
        eps: f64,
    },
    /// Slater (fermions) or Schmidt (bosons) decomposition.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long = "eps-count", default_value_t = DEFAULT_COUNT_EPS)]
        eps: f64,
    },
    /// Von Neumann entropy of the one-particle reduced density, in bits.
    Entropy {
        #[command(flatten)]
        input: Input,
        #[arg(long = "eps-count", default_value_t = DEFAULT_COUNT_EPS)]
        eps: f64,
    },
    /// Search for projectors giving both particles definite states.
    Properties {
        #[command(flatten)]
        input: Input,
        /// Attainment tolerance.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check the fast paths against brute-force oracles.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "eps-count", default_value_t = DEFAULT_COUNT_EPS)]
        eps: f64,
    },
    /// Write the (anti)symmetrized product of two vectors as a state file.
    Make {
        #[arg(long)]
        statistics: Statistics,
        /// Comma-separated amplitudes, e.g. `1,0.5+0.5i`; normalized on input.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random state file.
    Random {
        #[arg(long)]
        statistics: Statistics,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn vector(flag: &str, s: &str) -> Result<SingleParticleVector, Failure> {
    let v = io::parse_complex_list(s).map_err(|e| Failure::new(EXIT_USAGE, format!("--{flag}: {e}")))?;
    Ok(SingleParticleVector::normalized(v).map_err(|e| Failure::from(e).context(&format!("--{flag}")))?)
}

fn analyze(input: Input, analysis: Analysis) -> Result<u8, Failure> {
    if let Some(dir) = input.dir {
        let files = io::list_dir(&dir)?;
        let lines = Execution::default().map_slice(&files, |p| {
            io::load(p)
                .and_then(|l| commands::run(&l, analysis, Layout::Line, Execution::Sequential))
                .unwrap_or_else(|f| (commands::error_line(p, &f), f.code))
        });
        let mut code = 0;
        for (line, c) in lines {
            io::print(&(line + "\n"));
            code = code.max(c);
        }
        return Ok(code);
    }
    let path = input.path.expect("clap enforces one input");
    let loaded = io::load(&path)?;
    let (text, code) = commands::run(&loaded, analysis, Layout::Pretty, Execution::default())?;
    io::print(&(text + "\n"));
    Ok(code)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Classify { input, eps } => analyze(input, Analysis::Classify { eps }),
        Command::Decompose { input, eps } => analyze(input, Analysis::Decompose { eps }),
        Command::Entropy { input, eps } => analyze(input, Analysis::Entropy { eps }),
        Command::Properties { input, tol, restarts, seed } => {
            analyze(input, Analysis::Properties { tol, restarts, seed })
        }
        Command::Verify { input, samples, seed, eps } => analyze(input, Analysis::Verify { eps, samples, seed }),
        Command::Make { statistics, phi, chi, out } => {
            let (phi, chi) = (vector("phi", &phi)?, vector("chi", &chi)?);
            let psi = match statistics {
                Statistics::Fermion => antisymmetrize(&phi, &chi)?,
                Statistics::Boson => symmetrize(&phi, &chi)?,
            };
            io::emit(&io::render_state(&psi), out.as_deref())?;
            Ok(0)
        }
        Command::Random { statistics, dim, seed, out } => {
            let psi = random_state(dim, statistics, seed)?;
            io::emit(&io::render_state(&psi), out.as_deref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
