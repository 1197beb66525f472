//! `cwssym`: canonical forms, symmetry checks, symmetric state extension,
//! graph forms and local-complementation orbit searches for CWS codes.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 invariant violation,
//! 3 resource bound exceeded.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cws_symmetry::dense::DEFAULT_ORACLE_BOUND;
use cws_symmetry::extension::{ExtensionStrategy, DEFAULT_SEARCH_BOUND};
use cws_symmetry::graph::DEFAULT_ORBIT_BOUND;
use cws_symmetry::Error;

#[derive(Parser, Debug)]
#[command(name = "cwssym", version, about = "Symmetry toolkit for codeword-stabilized quantum codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Input file argument; `-` or nothing reads standard input.
#[derive(Args, Debug)]
struct Input {
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical union-stabilizer form of a code.
    Canon {
        #[command(flatten)]
        input: Input,
    },
    /// Decide whether a qudit permutation is a symmetry of a code.
    SymCheck {
        #[command(flatten)]
        input: Input,
        /// Permutation in 0-based cycle notation, or a layout name such as `Th`.
        #[arg(long)]
        perm: String,
        /// Largest Hilbert-space dimension for the dense cross-check.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
    },
    /// Find a stabilizer state inside the code invariant under the permutations.
    StateExtend {
        #[command(flatten)]
        input: Input,
        /// `;`-separated permutations.
        #[arg(long)]
        perms: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
    },
    /// Bring a code to graph form by local Clifford operations.
    ToGraph {
        #[command(flatten)]
        input: Input,
        /// Also write the graph in DOT format to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Search the local-complementation orbit of a graph for symmetric members.
    Orbit {
        #[command(flatten)]
        input: Input,
        /// `;`-separated permutations each member is tested against.
        #[arg(long)]
        perms: Option<String>,
        /// Also look for members with any automorphism of this exact order.
        #[arg(long)]
        order: Option<usize>,
        /// Maximum orbit size before giving up.
        #[arg(long, default_value_t = DEFAULT_ORBIT_BOUND)]
        bound: usize,
    },
    /// Write one of the built-in codes.
    Zoo {
        #[command(subcommand)]
        code: ZooCode,
    },
    /// Dense-matrix self-check of a code, or equality of two codes.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "FILE")]
        against: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
    },
    /// Experimental: test whether the completions of a symmetric code come
    /// with a classical code sharing its symmetry.
    ClassicalProbe {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        perms: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ZooCode {
    /// The [[5,1,3]] code.
    Five {
        /// Use X on every qubit as the logical operator instead of Z.
        #[arg(long)]
        x_variant: bool,
    },
    /// The [[7,1,3]] Steane code.
    Steane,
    /// The toric code on an L × L lattice.
    Toric {
        #[arg(long = "L", value_name = "L")]
        l: usize,
    },
    /// The state (|0…0⟩ − |1…1⟩)/√2.
    Ghz {
        #[arg(long = "n", value_name = "N")]
        n: usize,
        /// Represent the sign through the classical word instead of the generator.
        #[arg(long)]
        shifted: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Auto,
    Css,
    StandardForm,
    XCompletion,
    Search,
}

impl From<StrategyArg> for ExtensionStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => ExtensionStrategy::Auto,
            StrategyArg::Css => ExtensionStrategy::Css,
            StrategyArg::StandardForm => ExtensionStrategy::StandardForm,
            StrategyArg::XCompletion => ExtensionStrategy::XCompletion,
            StrategyArg::Search => ExtensionStrategy::Search,
        }
    }
}

/// Failures surfaced by the command line.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Library(#[from] Error),
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } => 1,
            CliError::Library(Error::Parse { .. } | Error::NotPrime(_)) => 1,
            CliError::Library(Error::BoundExceeded { .. } | Error::ExtensionExhausted(_)) => 3,
            CliError::Write { .. } | CliError::Library(_) | CliError::Violation(_) => 2,
        }
    }
}

/// What a command produced: text for stdout and the exit status.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    pub fn ok(stdout: impl Into<String>) -> Self {
        Outcome {
            stdout: stdout.into(),
            code: 0,
        }
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Canon { input } => commands::canon(input.file.as_deref()),
        Command::SymCheck {
            input,
            perm,
            oracle_bound,
        } => commands::sym_check(input.file.as_deref(), &perm, oracle_bound),
        Command::StateExtend {
            input,
            perms,
            strategy,
            search_bound,
            oracle_bound,
        } => commands::state_extend(
            input.file.as_deref(),
            &perms,
            strategy.into(),
            search_bound,
            oracle_bound,
        ),
        Command::ToGraph { input, dot } => commands::to_graph(input.file.as_deref(), dot.as_deref()),
        Command::Orbit {
            input,
            perms,
            order,
            bound,
        } => commands::orbit(input.file.as_deref(), perms.as_deref(), order, bound),
        Command::Zoo { code } => commands::zoo(match code {
            ZooCode::Five { x_variant } => commands::ZooChoice::Five { x_variant },
            ZooCode::Steane => commands::ZooChoice::Steane,
            ZooCode::Toric { l } => commands::ZooChoice::Toric { l },
            ZooCode::Ghz { n, shifted } => commands::ZooChoice::Ghz { n, shifted },
        }),
        Command::Oracle {
            input,
            against,
            oracle_bound,
        } => commands::oracle(input.file.as_deref(), against.as_deref(), oracle_bound),
        Command::ClassicalProbe {
            input,
            perms,
            search_bound,
        } => commands::classical_probe(input.file.as_deref(), &perms, search_bound),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
