use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tenfold::Error;
use tenfold_cli::{classify, compare, dirac, exit, exit_code, parse_document, InputDocument, Options};

#[derive(Parser, Debug)]
#[command(name = "tenfold", version, about = "Classify symmetric free-fermion hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Numerical tolerance; overrides the document's `tolerance` field.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized subroutines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of interpolation steps for `compare --path`.
    #[arg(long, global = true, default_value_t = 64)]
    steps: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symmetry class and π₀ invariant of each block orbit.
    Classify { input: PathBuf },
    /// Decide whether two gapped hamiltonians with the same symmetry are homotopic.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Also emit an explicit gapped path when they are.
        #[arg(long)]
        path: bool,
    },
    /// Count inequivalent mass terms of a Dirac hamiltonian.
    Dirac { input: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn load(path: &Path) -> Result<InputDocument, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

fn render<T: Serialize>(report: &T, text: impl FnOnce(&T) -> String, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Validation(format!("--tol must be positive, got {t}")));
        }
    }
    let opts = Options {
        tol: cli.tol,
        seed: cli.seed,
        steps: cli.steps,
    };
    Ok(match &cli.command {
        Command::Classify { input } => {
            let r = classify(&load(input)?, &opts)?;
            render(&r, |r| r.to_text(), cli.format)
        }
        Command::Compare { first, second, path } => {
            let r = compare(&load(first)?, &load(second)?, *path, &opts)?;
            render(&r, |r| r.to_text(), cli.format)
        }
        Command::Dirac { input } => {
            let r = dirac(&load(input)?, &opts)?;
            render(&r, |r| r.to_text(), cli.format)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(out) => match &cli.output {
            Some(p) => match fs::write(p, out) {
                Ok(()) => exit::OK,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    exit::INTERNAL
                }
            },
            None => {
                print!("{out}");
                exit::OK
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
