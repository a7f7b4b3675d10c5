//! Command-line front end for `leibniz-core`.
//!
//! Exit codes: 0 on success, 1 when the input fails validation (or the
//! oracle disagrees with the solver), 2 on usage and parse errors.

pub mod commands;
pub mod format;
pub mod report;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use leibniz::catalog::{self, CatalogKind};
use leibniz::{Error, Field, LeibnizAlgebra};

use crate::commands::Output;
use crate::format::FormatError;

#[derive(Parser, Debug)]
#[command(
    name = "leibniz",
    version,
    about = "Exact computations with left Leibniz algebras"
)]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the left Leibniz identity.
    Validate { file: PathBuf },
    /// Leibniz kernel, centers, central series, nilpotency class.
    Analyze { file: PathBuf },
    /// Derivation algebra with its Lie structure.
    Der { file: PathBuf },
    /// Compare the solver with brute-force enumeration (finite fields only).
    Oracle {
        file: PathBuf,
        /// Maximum number of candidate maps to enumerate.
        #[arg(long, default_value_t = leibniz::oracle::DEFAULT_LIMIT)]
        limit: u64,
    },
    /// Write a catalog algebra (lei4, lei5, cyclic2, abelian, heisenberg).
    Catalog {
        name: CatalogKind,
        #[arg(long, default_value = "Q")]
        field: Field,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        /// Destination file; the algebra is printed when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Everything a run produces; `main` only prints and exits.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Outcome> {
    let result = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<LeibnizAlgebra, Outcome> {
    let text = read_input(path)?;
    format::parse_algebra(&text).map_err(|e| {
        let code = match e {
            FormatError::IdentityViolation(_) => EXIT_INVALID,
            _ => EXIT_USAGE,
        };
        Outcome::error(code, format!("{}: {e}", path.display()))
    })
}

fn library_error(e: Error) -> Outcome {
    Outcome::error(EXIT_USAGE, e)
}

fn execute(cli: &Cli) -> Result<Output, Outcome> {
    match &cli.command {
        Command::Validate { file } => {
            let text = read_input(file)?;
            let table = format::parse_table(&text)
                .map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", file.display())))?;
            Ok(commands::validate(&file.display().to_string(), &table))
        }
        Command::Analyze { file } => {
            Ok(commands::analyze(&file.display().to_string(), &load(file)?))
        }
        Command::Der { file } => {
            commands::der(&file.display().to_string(), &load(file)?).map_err(library_error)
        }
        Command::Oracle { file, limit } => {
            commands::oracle(&file.display().to_string(), &load(file)?, *limit)
                .map_err(library_error)
        }
        Command::Catalog {
            name,
            field,
            lambda,
            dim,
            output,
        } => {
            let lambda = lambda
                .as_deref()
                .map(|s| field.parse_scalar(s))
                .transpose()
                .map_err(library_error)?;
            let entry = catalog::build(*name, *field, lambda, *dim).map_err(library_error)?;
            let out = commands::catalog_entry(
                &name.to_string(),
                &entry,
                output.as_ref().and_then(|p| p.to_str()),
            );
            if let Some(path) = output {
                let text = format::write_algebra(entry.algebra.table());
                std::fs::write(path, text)
                    .map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            }
            Ok(out)
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(out) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&out.report).expect("reports serialize") + "\n"
            } else {
                out.human
            };
            let code = if out.failed { EXIT_INVALID } else { EXIT_OK };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(outcome) => outcome,
    }
}
