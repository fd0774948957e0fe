//! `wreathhom` command-line front end. Every command writes JSON records, one
//! per line by default.

mod commands;
mod job;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use job::{parse_abelian, parse_range, resolve_cap, resolve_group, JobError};

#[derive(Parser)]
#[command(name = "wreathhom", version, about = "Homomorphisms from finite groups into wreath products A≀Sₙ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Largest n the recurrences may reach. Overrides WREATHHOM_CAP.
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// One JSON record per line.
    Jsonl,
    /// A single JSON array.
    Json,
}

#[derive(Args)]
struct Job {
    /// Builtin name (C1, C2, C3, C4, V4, S3, D4, Q8) or path to a JSON group spec.
    #[arg(long)]
    group: String,
    /// Coefficient group as comma-separated cyclic orders.
    #[arg(long = "A", default_value = "2")]
    a: String,
    /// A single n or an inclusive range `a..b`.
    #[arg(long)]
    n: String,
}

#[derive(Subcommand)]
enum Command {
    /// |Hom(G, A≀Sₙ)|.
    Count(Job),
    /// Probability that a uniform homomorphism has no fixed point.
    Pfree(Job),
    /// Fold fiber counts and their distance from uniform.
    Delta(Job),
    /// |Hom(G, Wₙ)| for the Weyl group of type Dₙ, with its share of Hom(G, C₂≀Sₙ).
    Weyl {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: String,
    },
    /// Uniform random homomorphisms.
    Sample {
        #[command(flatten)]
        job: Job,
        #[arg(long, default_value_t = 1)]
        draws: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check the counting engine against brute-force enumeration.
    OracleCheck {
        /// Restrict to one group; default is the whole desk suite.
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "A")]
        a: Option<String>,
    },
    /// Fit log pₙ against n^(1/|G|).
    FitDecay(Job),
}

fn run(command: Command, cap: usize, out: &mut Vec<Value>) -> Result<(), JobError> {
    let resolve = |job: &Job| -> Result<_, JobError> {
        Ok((resolve_group(&job.group)?, parse_abelian(&job.a)?, parse_range(&job.n)?))
    };
    match command {
        Command::Count(job) => {
            let (g, a, range) = resolve(&job)?;
            commands::count(&g, &a, range, cap, out)
        }
        Command::Pfree(job) => {
            let (g, a, range) = resolve(&job)?;
            commands::pfree(&g, &a, range, cap, out)
        }
        Command::Delta(job) => {
            let (g, a, range) = resolve(&job)?;
            commands::delta(&g, &a, range, cap, out)
        }
        Command::Weyl { group, n } => commands::weyl(&resolve_group(&group)?, parse_range(&n)?, cap, out),
        Command::Sample { job, draws, seed } => {
            let (g, a, range) = resolve(&job)?;
            commands::sample(&g, &a, range, draws, seed, cap, out)
        }
        Command::OracleCheck { group, a } => {
            let a = a.as_deref().map(parse_abelian).transpose()?;
            commands::oracle_check(group.as_deref(), a.as_ref(), out)
        }
        Command::FitDecay(job) => {
            let (g, a, range) = resolve(&job)?;
            commands::fit(&g, &a, range, cap, out)
        }
    }
}

fn emit(records: &[Value], args: &OutputArgs) -> std::io::Result<()> {
    let mut text = String::new();
    match args.format {
        Format::Jsonl => {
            for r in records {
                text.push_str(&r.to_string());
                text.push('\n');
            }
        }
        Format::Json => {
            text = Value::Array(records.to_vec()).to_string();
            text.push('\n');
        }
    }
    match &args.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut records = Vec::new();
    let outcome = resolve_cap(cli.output.cap).and_then(|cap| run(cli.command, cap, &mut records));
    if let Err(e) = emit(&records, &cli.output) {
        eprintln!("wreathhom: {e}");
        return ExitCode::FAILURE;
    }
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wreathhom: {e}");
            e.exit_code()
        }
    }
}
