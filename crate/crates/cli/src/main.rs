//! Command-line front end: file ingestion, invariant dispatch, engine
//! cross-verification, model-state generation, and the scaling benchmark.

mod bench;
mod compute;
mod gen;
mod record;
mod report;
mod state;
mod verify;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "stabinv", about = "Multipartite invariants of stabilizer states")]
struct Cli {
    /// Write records (JSON lines) or benchmark CSV here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Base RNG seed for randomized commands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for trial fan-out.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Dense-engine budget: total replica qubits (n_rep · n_qubits).
    #[arg(long, global = true, default_value_t = 24)]
    budget_qubits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an invariant of a state file with one or all methods.
    Compute {
        /// Graph, tableau, or X-generator state file.
        state: PathBuf,
        /// Invariant spec file.
        spec: PathBuf,
        /// Partition override: "round-robin:<q>" or per-qubit "A,B,..".
        #[arg(long)]
        partition: Option<String>,
        /// projector | canonical | dense | analytic | all
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// GHZ/Bell extraction counts, subgroup table, and entropy formulas
    /// for a tripartite state.
    TripartiteReport {
        state: PathBuf,
        #[arg(long)]
        partition: Option<String>,
    },
    /// Write a model state file (plus coordinate sidecar for lattices).
    Gen {
        /// ghz | bell | toric | xcube | random-graph
        model: String,
        /// Lattice linear size (toric, xcube).
        #[arg(long)]
        l: Option<usize>,
        /// Vertex count (random-graph).
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability (random-graph).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Party count, assigned round-robin (random-graph).
        #[arg(long, default_value_t = 3)]
        q: usize,
    },
    /// Time the projector and canonical engines on growing random
    /// connected graphs; CSV of median wall times plus log-log slopes.
    Benchmark {
        #[arg(long, default_value_t = 10)]
        min: usize,
        #[arg(long, default_value_t = 100)]
        max: usize,
        #[arg(long, default_value_t = 10)]
        step: usize,
        /// Invariant spec file (default: Rényi multi-entropy n=2, q=3).
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Randomized cross-engine and closed-form verification campaign.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_qubits: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.output.as_deref();
    let result = match &cli.command {
        Command::Compute {
            state,
            spec,
            partition,
            method,
        } => compute::run(state, spec, partition.as_deref(), method, cli.budget_qubits, out),
        Command::TripartiteReport { state, partition } => {
            report::run(state, partition.as_deref(), out)
        }
        Command::Gen { model, l, n, p, q } => gen::run(model, *l, *n, *p, *q, cli.seed, out),
        Command::Benchmark {
            min,
            max,
            step,
            spec,
        } => bench::run(*min, *max, *step, spec.as_deref(), cli.seed, out),
        Command::Verify { trials, max_qubits } => verify::run(
            *trials,
            *max_qubits,
            cli.seed,
            cli.threads,
            cli.budget_qubits,
            out,
        ),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes a line to --output (append) or stdout.
pub fn emit_line(output: Option<&std::path::Path>, line: &str) -> std::io::Result<()> {
    use std::io::Write;
    match output {
        Some(path) => {
            let mut f = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)?;
            writeln!(f, "{line}")
        }
        None => {
            println!("{line}");
            Ok(())
        }
    }
}
