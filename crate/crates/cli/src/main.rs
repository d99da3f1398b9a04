mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Learn STRIPS action models from demonstrations with version spaces.
#[derive(Debug, Parser)]
#[command(name = "amvs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Sound,
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pddl,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ground a PDDL domain and problem into a model file.
    Ground {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Print the ground action catalog instead of the fluents.
        #[arg(long)]
        list_actions: bool,
    },
    /// Generate a demonstration trace by random walks on a model.
    Simulate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        /// Failed executions drawn per positive demonstration.
        #[arg(long)]
        ratio: Option<f64>,
        #[arg(long)]
        dedupe: bool,
        /// JSON file with `length`, `restarts`, `ratio` and `dedupe`; flags win.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Learn version-space boundaries from a trace.
    Learn {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Reject updates that grow an upper precondition boundary past this size.
        #[arg(long)]
        max_upper: Option<usize>,
    },
    /// Read a sound or complete model off a snapshot.
    Extract {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Defaults to pddl for sound models and json for complete ones.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: PathBuf,
        /// Also print every transition of the extracted model.
        #[arg(long)]
        list_transitions: bool,
    },
    /// Score a model on a trace.
    Eval {
        /// Snapshot to extract a model from; needs --kind.
        #[arg(long, conflicts_with = "model", requires = "kind")]
        snapshot: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Ground model file to score directly.
        #[arg(long, required_unless_present = "snapshot")]
        model: Option<PathBuf>,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Learning curves of both models as CSV.
    Curve {
        /// The true model, used to draw failures for each ratio.
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 0.5, 1.0, 2.0, 5.0])]
        ratios: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fraction of the trace used for training; the rest is the test set.
        #[arg(long, default_value_t = 0.5)]
        split: f64,
        #[arg(long)]
        dedupe: bool,
        /// Writes to standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a plan against a model.
    Validate {
        #[arg(long)]
        model: PathBuf,
        /// PDDL problem supplying the initial state and goal; otherwise the
        /// model file's own.
        #[arg(long)]
        problem: Option<PathBuf>,
        #[arg(long)]
        plan: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ground {
            domain,
            problem,
            out,
            list_actions,
        } => commands::ground(&domain, &problem, &out, list_actions),
        Command::Simulate {
            model,
            seed,
            length,
            restarts,
            ratio,
            dedupe,
            config,
            out,
        } => commands::simulate(commands::SimulateArgs {
            model: &model,
            seed,
            length,
            restarts,
            ratio,
            dedupe,
            config: config.as_deref(),
            out: &out,
        }),
        Command::Learn {
            trace,
            out,
            max_upper,
        } => commands::learn(&trace, &out, max_upper),
        Command::Extract {
            snapshot,
            kind,
            format,
            out,
            list_transitions,
        } => commands::extract(&snapshot, kind, format, &out, list_transitions),
        Command::Eval {
            snapshot,
            kind,
            model,
            trace,
        } => commands::eval(snapshot.as_deref().zip(kind), model.as_deref(), &trace),
        Command::Curve {
            model,
            trace,
            ratios,
            seed,
            split,
            dedupe,
            out,
        } => commands::curve(&model, &trace, ratios, seed, split, dedupe, out.as_deref()),
        Command::Validate { model, problem, plan } => commands::validate(&model, problem.as_deref(), &plan),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
