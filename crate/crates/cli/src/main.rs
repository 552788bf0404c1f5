use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use minorsum_cli::config::{parse_identities, RingChoice, Span, VerifyConfig};
use minorsum_cli::{eval, paths, run_verify, schur, EvalOp};

#[derive(Parser)]
#[command(
    name = "minorsum",
    version,
    about = "Exact checks of minor summation and Pfaffian identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded randomized checks; exits nonzero iff a trial fails.
    Verify(VerifyArgs),
    /// Evaluate one quantity on JSON matrix files.
    Eval {
        #[arg(value_enum)]
        op: Op,
        /// One file, or A B X for f and g.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Count non-intersecting paths with free endpoints.
    Paths { file: PathBuf },
    /// Print a skew Schur polynomial.
    Schur {
        /// Outer partition, comma separated.
        #[arg(long)]
        lambda: String,
        /// Inner partition, comma separated.
        #[arg(long, default_value = "")]
        mu: String,
        /// Number of variables x1..xk.
        #[arg(long, default_value_t = 3)]
        vars: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Pf,
    Det,
    Minorsum,
    F,
    G,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Identity ids (comma separated or repeated), or "all".
    #[arg(long, default_value = "all")]
    identity: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: u32,
    /// Row counts, N or LO..HI (inclusive).
    #[arg(long, default_value = "1..6")]
    m: Span,
    /// Column counts, N or LO..HI (inclusive); cells with n < m are skipped.
    #[arg(long, default_value = "1..8")]
    n: Span,
    /// int, or poly for symbolic entries.
    #[arg(long, default_value = "int")]
    ring: RingChoice,
    /// Integer entries are drawn from [-bound, bound].
    #[arg(long, default_value_t = 5)]
    bound: i64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let cfg = VerifyConfig {
        identities: parse_identities(&args.identity)?,
        m: args.m,
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        ring: args.ring,
        bound: args.bound,
    };
    let report = run_verify(&cfg, args.workers)?;
    let text = report.to_json_lines();
    match &args.out {
        Some(path) => fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    eprintln!(
        "{} trials, {} failed, {:.2?}",
        report.totals.trials, report.totals.failed, report.wall_time
    );
    Ok(report.is_success())
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Eval { op, files } => {
            let op = match op {
                Op::Pf => EvalOp::Pf,
                Op::Det => EvalOp::Det,
                Op::Minorsum => EvalOp::MinorSum,
                Op::F => EvalOp::F,
                Op::G => EvalOp::G,
            };
            let inputs = files
                .iter()
                .map(|p| Ok((p.display().to_string(), read(p)?)))
                .collect::<Result<Vec<_>>>()?;
            println!("{}", eval(op, &inputs)?);
            Ok(true)
        }
        Command::Paths { file } => {
            println!("{}", serde_json::to_string(&paths(&read(&file)?)?)?);
            Ok(true)
        }
        Command::Schur { lambda, mu, vars } => {
            println!("{}", schur(&lambda, &mu, vars)?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
