use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

#[derive(Parser, Debug)]
#[command(name = "ebs", version, about = "Erdős-Burgess and Davenport constants of finite cyclic semigroup products")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit a single JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for brute-force search [default: available parallelism]
    #[arg(long, global = true, env = "EBS_THREADS")]
    threads: Option<usize>,

    /// Search node budget
    #[arg(long, global = true, default_value_t = 100_000_000)]
    node_budget: u64,

    /// Search time budget in seconds
    #[arg(long, global = true, default_value_t = 60)]
    time_budget: u64,

    /// Result cache file (JSON map)
    #[arg(long, global = true, env = "EBS_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse or canonicalize a product specification
    Spec {
        #[command(subcommand)]
        action: SpecAction,
    },
    /// Compute a constant
    Const {
        quantity: QuantityArg,
        /// Product of cyclic semigroups, e.g. "C(3;2)xC(1;4)"
        #[arg(long)]
        spec: Option<String>,
        /// Comma-separated group moduli, e.g. "2,4"
        #[arg(long)]
        group: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
    },
    /// Check a predicate on a sequence file
    Seq {
        #[command(subcommand)]
        action: SeqAction,
    },
    /// Behaving sequences and structure classification
    Struct {
        #[command(subcommand)]
        action: StructAction,
    },
    /// Batch exploration, one JSON line per instance
    Explore {
        kind: ExploreKind,
        #[arg(long, default_value_t = 1)]
        k_min: u64,
        #[arg(long, default_value_t = 3)]
        k_max: u64,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long, default_value_t = 3)]
        n_max: u64,
        /// JSON-lines output file; rows go to stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum SpecAction {
    /// Show the parsed factors and derived sizes
    Parse {
        #[arg(long)]
        spec: String,
    },
    /// Print the canonical form
    Format {
        #[arg(long)]
        spec: String,
    },
}

#[derive(Subcommand, Debug)]
enum SeqAction {
    Check {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Predicate::Free)]
        predicate: Predicate,
    },
}

#[derive(Subcommand, Debug)]
enum StructAction {
    /// Behaving test and the bound classification of an integer sequence
    Behaving {
        #[arg(long)]
        ints: String,
    },
    /// Classify a long idempotent-sum free sequence over C(k;n)
    Classify {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        file: PathBuf,
    },
    /// Savchev-Chen decomposition of a sequence over Z_n
    SavchevChen {
        #[arg(long)]
        modulus: u64,
        /// Residues, comma-separated
        #[arg(long)]
        ints: String,
    },
    /// Behaving-sequence structure of a free or minimal sequence over C(k;n)
    HasStructure {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Free)]
        mode: ModeArg,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum QuantityArg {
    Eb,
    Davenport,
    Lhat,
    L,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum MethodArg {
    Formula,
    Brute,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Predicate {
    Free,
    Idempotent,
    Minimal,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ModeArg {
    Free,
    Minimal,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ExploreKind {
    Conjecture41,
    LhatGap,
    LGap,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = commands::Ctx::new(&cli.global);
    let out = match cli.command {
        Command::Spec { action: SpecAction::Parse { spec } } => commands::spec_parse(&ctx, &spec),
        Command::Spec { action: SpecAction::Format { spec } } => commands::spec_format(&ctx, &spec),
        Command::Const { quantity, spec, group, method } => {
            commands::constant(&ctx, quantity, spec.as_deref(), group.as_deref(), method)
        }
        Command::Seq { action: SeqAction::Check { spec, file, predicate } } => {
            commands::seq_check(&ctx, &spec, &file, predicate)
        }
        Command::Struct { action } => match action {
            StructAction::Behaving { ints } => commands::behaving(&ctx, &ints),
            StructAction::Classify { spec, file } => commands::classify(&ctx, &spec, &file),
            StructAction::SavchevChen { modulus, ints } => commands::sc_witness(&ctx, modulus, &ints),
            StructAction::HasStructure { spec, file, mode } => commands::structure(&ctx, &spec, &file, mode),
        },
        Command::Explore { kind, k_min, k_max, n_min, n_max, out } => {
            commands::explore(&ctx, kind, [k_min, k_max, n_min, n_max], out.as_deref())
        }
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
