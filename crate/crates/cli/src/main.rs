//! `hooks`: verify the hook-polynomial identities, move between codes and
//! trees, and dump the underlying combinatorial families.

mod commands;
mod demo;
mod input;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "hooks", version)]
#[command(about = "Increasing trees, hook polynomials and the code bijection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the polynomial and counting identities for a range of sizes
    Verify {
        /// Size `r` or inclusive range `a..b`
        #[arg(long, value_name = "R|A..B")]
        r: String,
        /// Run only these identities (repeatable or comma separated)
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the code of a tree with respect to a partition
    Encode {
        /// Partition: file path, inline JSON, or `-` for stdin
        #[arg(long)]
        pi: String,
        /// Tree: file path, inline JSON, or `-` for stdin
        #[arg(long)]
        tree: String,
    },
    /// Build the tree of a code with respect to a partition
    Decode {
        /// Partition, or a `{"pi": .., "c": ..}` document
        #[arg(long)]
        pi: String,
        /// Code as `4,5`, `[4,5]`, or a file path
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Print the forest after every stage as JSON lines
        #[arg(long)]
        trace: bool,
    },
    /// Stream a family as JSON lines
    Enumerate {
        #[arg(value_enum)]
        kind: Kind,
        /// Size, for `trees` and `partitions`
        #[arg(long)]
        r: Option<usize>,
        /// Partition, for `E` and `C`
        #[arg(long)]
        pi: Option<String>,
        /// Print only the number of objects
        #[arg(long)]
        count: bool,
    },
    /// Walk through the worked examples shipped with the binary
    Demo {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Increasing trees on 1..=r
    Trees,
    /// Partitions of 1..=r with {1} as a block
    Partitions,
    /// Trees in which every block of the partition is an ancestor chain
    #[value(name = "E", alias = "e")]
    E,
    /// Codes of the partition
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] hooks_core::Error),
    #[error("{0}")]
    ChecksFailed(String),
    #[error("{path}: {source}")]
    Read { path: String, source: io::Error },
    #[error(transparent)]
    Output(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } => 2,
            _ => 1,
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Verify { r, only, format } => commands::verify(&r, &only, format, out),
        Command::Encode { pi, tree } => commands::encode(&pi, &tree, out),
        Command::Decode { pi, c, trace } => commands::decode(&pi, c.as_deref(), trace, out),
        Command::Enumerate { kind, r, pi, count } => {
            commands::enumerate(kind, r, pi.as_deref(), count, out)
        }
        Command::Demo { format } => demo::run(format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = dispatch(cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
