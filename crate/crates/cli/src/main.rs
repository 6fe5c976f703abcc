use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Parser, Subcommand, ValueEnum};
use snforge_cli::commands::{cmd_recheck, cmd_run};
use snforge_cli::demos::{run_demo, REGISTRY};
use snforge_cli::error::CliError;
use snforge_cli::files::Task;
use snforge_cli::run::RunOptions;
use snforge_cli::schema::{certificate_schema, problem_schema};
use snforge_core::backends::Backend;

#[derive(Parser)]
#[command(name = "snforge", version, about = "Construct, refute and recheck inner conjugators φ(x) = c·x·c⁻¹")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Problem file (JSON).
    problem: PathBuf,
    /// Certificate path; defaults to `<stem>.cert.json` in the working directory.
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u32>,
    /// Force a backend: product, power-series, findim, pid-matrix, ufd, curve.
    #[arg(long)]
    backend: Option<Backend>,
    /// Embed the full coefficient tuple in the certificate.
    #[arg(long)]
    emit_coefficients: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemaKind {
    Problem,
    Certificate,
}

#[derive(Subcommand)]
enum Command {
    /// Solve or validate a homomorphism problem.
    Solve(SolveArgs),
    /// Re-verify a certificate against its problem without solving.
    Recheck { problem: PathBuf, certificate: PathBuf },
    /// Decompose an automorphism of M_n(S) as Inn(c)∘(id⊗σ).
    DecomposeAut(SolveArgs),
    /// Find an inner witness for a derivation.
    Derivation(SolveArgs),
    /// Decide whether the flip of R⊗R is inner.
    FlipCheck(SolveArgs),
    /// Run a built-in scenario; without a name, list them.
    Demo {
        name: Option<String>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the JSON Schema of problem or certificate files.
    Schema {
        #[arg(value_enum, default_value = "problem")]
        kind: SchemaKind,
    },
}

fn env_seed() -> Result<u64, CliError> {
    match std::env::var("SNFORGE_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::input("SNFORGE_SEED", format!("not a seed: `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn solve(args: &SolveArgs, tasks: &[Task]) -> Result<i32, CliError> {
    let opts = RunOptions {
        seed: args.seed,
        default_seed: env_seed()?,
        trials: args.trials,
        backend: args.backend,
        emit_coefficients: args.emit_coefficients,
    };
    let (outcome, written) = cmd_run(&args.problem, args.out.as_deref(), &opts, tasks)?;
    for line in &outcome.lines {
        println!("{line}");
    }
    if let Some(path) = written {
        println!("certificate: {}", path.display());
    }
    Ok(outcome.exit_code())
}

fn demo(name: Option<&str>, out_dir: &Path, seed: Option<u64>) -> Result<i32, CliError> {
    let Some(name) = name.filter(|n| REGISTRY.contains(n)) else {
        if let Some(n) = name {
            eprintln!("unknown demo `{n}`");
        }
        eprintln!("available demos:");
        for n in REGISTRY {
            eprintln!("  {n}");
        }
        return Ok(if name.is_some() { 1 } else { 0 });
    };
    let opts = RunOptions { seed, default_seed: env_seed()?, ..RunOptions::default() };
    let run = run_demo(name, out_dir, &opts)?;
    for line in &run.lines {
        println!("{line}");
    }
    Ok(run.outcome.exit_code())
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve(a, &[Task::Solve, Task::Validate, Task::Recheck]),
        Command::DecomposeAut(a) => solve(a, &[Task::DecomposeAut]),
        Command::Derivation(a) => solve(a, &[Task::Derivation]),
        Command::FlipCheck(a) => solve(a, &[Task::FlipCheck]),
        Command::Recheck { problem, certificate } => cmd_recheck(problem, certificate).map(|lines| {
            for line in lines {
                println!("ok: {line}");
            }
            0
        }),
        Command::Demo { name, out_dir, seed } => demo(name.as_deref(), out_dir, *seed),
        Command::Schema { kind } => {
            let schema = match kind {
                SchemaKind::Problem => problem_schema(),
                SchemaKind::Certificate => certificate_schema(),
            };
            println!("{}", serde_json::to_string_pretty(&schema).expect("schema serializes"));
            Ok(0)
        }
    };
    match result {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code())
        }
    }
}
