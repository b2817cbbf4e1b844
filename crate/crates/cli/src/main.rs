//! `formal-pbw`: exact computations in truncated enveloping algebras of
//! graded nilpotent Lie algebras.
//!
//! Exit status: 0 on success, 1 when a check or an axiom fails, 2 on bad
//! input.

mod commands;
mod config;
mod expr;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CheckKind, CliError, CmdResult, Output};
use config::Algebra;

#[derive(Parser)]
#[command(
    name = "formal-pbw",
    version,
    about = "Exact PBW computations for graded nilpotent Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// TOML file defining the algebra.
    #[arg(long, value_name = "FILE", conflicts_with = "builtin")]
    algebra: Option<PathBuf>,
    /// heisenberg | abelian:d | upper_triangular:n | free_nilpotent:m:c | vector_fields:d:c
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Algebra, CliError> {
        match (&self.algebra, &self.builtin) {
            (Some(path), _) => Ok(config::load(path)?),
            (None, Some(name)) => Ok(config::builtin(name)?),
            (None, None) => Err(CliError::Input(
                "give --algebra FILE or --builtin NAME".into(),
            )),
        }
    }
}

#[derive(Args)]
struct Common {
    /// Truncation order N.
    #[arg(long, value_name = "N", default_value_t = 4)]
    trunc: usize,
    /// Print machine-readable JSON.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn output(&self) -> Output {
        Output { json: self.json }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the Lie algebra axioms and print the lower central series.
    Validate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a tensor expression in the enveloping algebra.
    NormalForm {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Signed symmetrization of each homogeneous component.
    Symmetrize {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Split a tensor into its symmetric part and its part in the ideal.
    Decompose {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Run an exhaustive checker.
    Check {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        which: CheckKind,
        /// Quotient levels for the tower check.
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
    },
    /// Dimension tables of the tensor, symmetric and enveloping algebras.
    Dims {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Use the free algebra on M even generators instead of an algebra.
        #[arg(long, value_name = "M", conflicts_with_all = ["algebra", "builtin"])]
        free: Option<usize>,
    },
    /// Evaluate the Lie morphism out of a free Lie algebra given by
    /// generator images.
    Extend {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Generator images, e.g. 'a=x,b=y'.
        #[arg(long)]
        map: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { source, json } => commands::validate(&source.load()?, &Output { json }),
        Command::NormalForm {
            source,
            common,
            expr,
        } => commands::normal_form_cmd(&source.load()?, &expr, common.trunc, &common.output()),
        Command::Symmetrize {
            source,
            common,
            expr,
        } => commands::symmetrize(&source.load()?, &expr, common.trunc, &common.output()),
        Command::Decompose {
            source,
            common,
            expr,
        } => commands::decompose(&source.load()?, &expr, common.trunc, &common.output()),
        Command::Check {
            source,
            common,
            which,
            levels,
        } => commands::check(
            &source.load()?,
            which,
            common.trunc,
            &levels,
            &common.output(),
        ),
        Command::Dims {
            source,
            common,
            free,
        } => match free {
            Some(m) => commands::dims_free(m, common.trunc, &common.output()),
            None => commands::dims(&source.load()?, common.trunc, &common.output()),
        },
        Command::Extend {
            source,
            common,
            map,
            expr,
        } => commands::extend(&source.load()?, &map, &expr, common.trunc, &common.output()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
