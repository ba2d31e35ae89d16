mod checks;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use homtop::graph::GraphFormat;
use homtop::polysearch::IdentitySystem;

/// Exit statuses beyond 0.
pub mod exit {
    pub const INCONSISTENT: u8 = 2;
    pub const ONLY_UNCHECKED: u8 = 3;
    pub const USAGE: u8 = 64;
    pub const INPUT: u8 = 65;
    pub const BUDGET: u8 = 75;
}

#[derive(Parser, Debug)]
#[command(name = "homtop", version, about = "Homomorphism posets, their topology, and polymorphism search for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

/// Options shared by all subcommands. Each can also be set through a `HOMTOP_` variable.
#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Graph input format: edge-list or graph6.
    #[arg(long, global = true, env = "HOMTOP_FORMAT", default_value = "edge-list")]
    pub format: GraphFormat,
    /// Largest multihomomorphism poset built.
    #[arg(long, global = true, env = "HOMTOP_MAX_ELEMENTS", default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_elements: u64,
    /// Largest order complex built, in faces.
    #[arg(long, global = true, env = "HOMTOP_MAX_FACES", default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_faces: u64,
    /// Identity preset (siggers4, siggers6-paper, siggers6-corrected) or a JSON file.
    #[arg(long, global = true, env = "HOMTOP_IDENTITY", default_value = "siggers4")]
    pub identity: String,
    /// Require idempotence (overrides the identity file).
    #[arg(long, global = true, env = "HOMTOP_IDEMPOTENT", overrides_with = "no_idempotent")]
    pub idempotent: bool,
    /// Drop idempotence.
    #[arg(long, global = true, env = "HOMTOP_NO_IDEMPOTENT", overrides_with = "idempotent")]
    pub no_idempotent: bool,
    /// Time limit for one polymorphism search, in milliseconds.
    #[arg(long, global = true, env = "HOMTOP_BUDGET_MS", default_value_t = 60_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_ms: u64,
    /// Random tuples checked when exhaustive sub-Taylor verification is too large.
    #[arg(long, global = true, env = "HOMTOP_SAMPLES", default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, global = true, env = "HOMTOP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true, env = "HOMTOP_JSON")]
    pub json: bool,
    /// Worker threads for `corpus`.
    #[arg(long, global = true, env = "HOMTOP_JOBS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether H-colouring is in P or NP-complete.
    Classify { input: PathBuf },
    /// Build mhom(K2, H) and report its homology, flip and contractibility.
    Complex {
        input: PathBuf,
        /// Include the full poset (elements, covers, flip pairs).
        #[arg(long)]
        dump: bool,
    },
    /// Search for a polymorphism satisfying the identity system.
    Poly {
        input: PathBuf,
        /// Also derive the per-coordinate patterns and binary tables.
        #[arg(long)]
        witness: bool,
    },
    /// Dismantle a poset and compute the homology of its order complex.
    Poset { input: PathBuf },
    /// Classify and cross-check a list of graphs.
    Corpus {
        /// One graph per line: `[id] graph6` or `[id] n:u-v,...`.
        input: Option<PathBuf>,
        /// Use every graph on 1..=N vertices instead of a file.
        #[arg(long, value_name = "N")]
        all: Option<usize>,
        /// With --all: connected graphs only.
        #[arg(long)]
        connected: bool,
    },
    /// Run the built-in golden checks.
    VerifyPaper,
}

#[derive(Serialize)]
pub struct Config<'a> {
    pub command: &'static str,
    pub format: GraphFormat,
    pub max_elements: u64,
    pub max_faces: u64,
    pub identity: &'a IdentitySystem,
    pub budget_ms: u64,
    pub samples: u64,
    pub jobs: u64,
}

/// Error carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<homtop::Error> for Failure {
    fn from(e: homtop::Error) -> Self {
        Failure {
            code: if e.is_budget() { exit::BUDGET } else { exit::INPUT },
            message: e.to_string(),
        }
    }
}

impl Options {
    pub fn identity_system(&self) -> Result<IdentitySystem, Failure> {
        let sys = match IdentitySystem::preset(&self.identity) {
            Some(s) => s,
            None => {
                let text = std::fs::read_to_string(&self.identity).map_err(|e| Failure {
                    code: exit::INPUT,
                    message: format!("identity {:?} is neither a preset nor a readable file: {e}", self.identity),
                })?;
                IdentitySystem::from_json(&text)?
            }
        };
        if self.no_idempotent {
            Ok(sys.with_idempotent(false)?)
        } else if self.idempotent {
            Ok(sys.with_idempotent(true)?)
        } else {
            Ok(sys)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Classify { input } => commands::classify(&cli.opts, input),
        Command::Complex { input, dump } => commands::complex(&cli.opts, input, *dump),
        Command::Poly { input, witness } => commands::poly(&cli.opts, input, *witness),
        Command::Poset { input } => commands::poset(&cli.opts, input),
        Command::Corpus { input, all, connected } => commands::corpus(&cli.opts, input.as_deref(), *all, *connected),
        Command::VerifyPaper => checks::verify_paper(&cli.opts),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("homtop: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
