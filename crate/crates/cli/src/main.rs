mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "nt", version, about = "Quantum representations and Nielsen–Thurston classification of surface mapping classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 2)]
    genus: u32,
    /// Inclusive range "3..10" or list "3,5,7" (defaults depend on genus).
    #[arg(long)]
    levels: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a mapping class given as a word in the Dehn twist generators.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Maximal reduced length of curve conjugators.
        #[arg(long)]
        depth: Option<usize>,
        /// Largest power M tried.
        #[arg(long)]
        power_bound: Option<u32>,
    },
    /// Dimensions of the representation spaces versus the Verlinde formula.
    Dims {
        #[command(flatten)]
        common: Common,
    },
    /// Check braid, commutation, chain and unitarity relations.
    VerifyRelations {
        #[command(flatten)]
        common: Common,
    },
    /// Exact and float commutator of a word with a curve operator.
    Commutator {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Table curve, optionally moved by a word: "c2" or "T1 T2:c3".
        #[arg(long)]
        curve: String,
    },
    /// Operator norm of a curve operator against 2cos(π/r).
    NormSweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        curve: String,
    },
    /// Search for an SU(2) representation separating two curves by trace.
    HolonomySeparate {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recoupling coefficients at each level.
    DumpTables {
        #[command(flatten)]
        common: Common,
        /// Include every admissible tetrahedron.
        #[arg(long)]
        tets: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("NT_THREADS").ok().and_then(|s| s.parse().ok()).unwrap_or(1);
    let json = cli.json;
    // an internal panic is an invariant violation, not a usage error
    let run = std::panic::catch_unwind(move || dispatch(cli.command, threads, json));
    match run {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(3),
    }
}

fn dispatch(command: Command, threads: usize, json: bool) -> Result<ExitCode, String> {
    match command {
        Command::Classify { common, word, depth, power_bound } => {
            commands::classify(&common, &word, depth, power_bound, threads, json)
        }
        Command::Dims { common } => commands::dims(&common, json),
        Command::VerifyRelations { common } => commands::verify_relations(&common, json),
        Command::Commutator { common, word, curve } => commands::commutator(&common, &word, &curve, json),
        Command::NormSweep { common, curve } => commands::norm_sweep(&common, &curve, json),
        Command::HolonomySeparate { c1, c2, trials, seed } => commands::separate(&c1, &c2, trials, seed, json),
        Command::DumpTables { common, tets } => commands::dump_tables(&common, tets, json),
    }
}
