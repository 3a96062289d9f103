//! `chevtwist`: exact Chevalley groups, twists and twisted conjugacy from the command line.
//!
//! Results go to stdout (or `--output`) as versioned JSON; progress goes to stderr.
//! Exit codes: 0 success, 1 usage error, 2 computation error, 3 budget exceeded.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::{EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "chevtwist", version, about = "Exact Chevalley groups, Steinberg twists and twisted conjugacy")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Root system type: A, D or E (E6).
    #[arg(long = "type", global = true, default_value = "A")]
    pub kind: String,
    /// Rank of the root system (6 for E).
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Field descriptor: Q, Q(sqrt,d), F(p,e), RF(<base>,T).
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    /// Automorphism descriptor: id, inner:<word>, diag:<values>, field:<map>, joined by `*`
    /// (leftmost factor applied last).
    #[arg(long, global = true, default_value = "id")]
    pub aut: String,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of elements to enumerate.
    #[arg(long, global = true, env = "CHEVTWIST_BUDGET", default_value_t = chevtwist::finite::DEFAULT_BUDGET)]
    pub budget: usize,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Matrix picture for `element`: the adjoint representation or the 2x2 picture of A1.
    #[arg(long, global = true, value_enum, default_value_t = Picture::Adjoint)]
    pub picture: Picture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Picture {
    Adjoint,
    Fundamental,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the root system: ordered roots and Cartan matrix.
    Rootsys,
    /// Dump the structure constants of the Chevalley basis.
    Basis {
        /// Also write the checksummed table file here.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Evaluate a generator word such as "x a1 1/2; n a2 3; h a1+a2 2; chi 2,3".
    Element {
        #[arg(long)]
        word: String,
    },
    /// Random checks of the Steinberg relations with extracted commutator constants.
    Relations {
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Set up sigma = graph ∘ field for a field automorphism and list fixed generators.
    Twist {
        /// Field automorphism of the twist: conj, frob, ...
        #[arg(long)]
        sigma: String,
        /// Comma-separated parameters for the fixed generators.
        #[arg(long, default_value = "1")]
        params: String,
        /// Enumerate the twisted group (finite fields only).
        #[arg(long)]
        enumerate: bool,
    },
    /// Twisted conjugacy classes of the automorphism on a finite instance.
    Reidemeister {
        /// Enumerate the twisted group for this field automorphism instead of the full group.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Isogredience classes of Inn·gamma on a finite instance, gamma given by --aut.
    Isogredience {
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Certified witness family: elements with pairwise distinct norm invariants.
    Witness {
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Keep witnesses fixed by the twist with this field automorphism.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Norm invariant of an element under the automorphism.
    Invariant {
        #[arg(long)]
        word: String,
    },
    /// trace(g(T)^m h(chi)) over k(T), with --field giving k.
    TraceKt {
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Character values on the simple roots (default all 1).
        #[arg(long)]
        chi: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let code = match commands::run(&cli.command, &cli.config) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            if let Err(io) = commands::emit(&cli.config, &cli.command, Err(&e)) {
                eprintln!("error: {io}");
            }
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
