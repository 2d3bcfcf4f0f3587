//! `thetabody`: compute and certify theta bodies of graphs from the command line.

mod commands;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use theta_core::cones::ThetaVariant;
use theta_core::graph::parse_dimacs;

use commands::Input;
use report::{write_atomic, Echo, Report};

#[derive(Parser)]
#[command(name = "thetabody", version, about = "Theta bodies, their certificates and related relaxations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All five theta values with optimal solutions and residuals.
    Theta(Opts),
    /// α ≤ θ′ ≤ θ ≤ θ⁺ ≤ QSTAB ≤ FRAC at the given weights.
    Chain(Opts),
    /// Antiblocker pairings between G and its complement.
    Duality(Opts),
    /// Hoffman ratio and the eigenvalue form of θ.
    Hoffman(Opts),
    /// θ through the nonnegative quadratic program.
    Luz(Opts),
    /// FRAC vertices and their Schur lifts.
    Frac(Opts),
    /// Fractional chromatic number with its completely positive certificate.
    Chifrac(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Graph in DIMACS format.
    #[arg(long)]
    graph: PathBuf,
    /// One weight per line in vertex order; all ones when omitted.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, default_value = "th")]
    variant: ThetaVariant,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample count for randomized checks.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Treat inconclusive checks as failures.
    #[arg(long)]
    strict: bool,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn read_weights(path: &PathBuf, n: usize) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut w = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().with_context(|| format!("weights line {}: {line:?}", k + 1))?;
        if !v.is_finite() || v < 0.0 {
            bail!("weights line {}: {v} is not a finite nonnegative number", k + 1);
        }
        w.push(v);
    }
    if w.len() != n {
        bail!("{} weights for a graph on {n} vertices", w.len());
    }
    Ok(w)
}

fn run(name: &str, opts: &Opts) -> Result<bool> {
    if !(1e-12..=1e-2).contains(&opts.tol) {
        bail!("--tol must lie in [1e-12, 1e-2], got {}", opts.tol);
    }
    let text = std::fs::read_to_string(&opts.graph).with_context(|| format!("reading {}", opts.graph.display()))?;
    let graph = parse_dimacs(&text)?;
    let weights = match &opts.weights {
        Some(p) => read_weights(p, graph.n())?,
        None => vec![1.0; graph.n()],
    };
    let input = Input { graph, weights, variant: opts.variant, tol: opts.tol, seed: opts.seed, samples: opts.samples };
    let mut rep = Report::new(Echo {
        command: name.to_string(),
        graph: opts.graph.display().to_string(),
        weights: opts.weights.as_ref().map_or("uniform".to_string(), |p| p.display().to_string()),
        variant: opts.variant.tag().to_string(),
        tol: opts.tol,
        seed: opts.seed,
        samples: opts.samples,
        strict: opts.strict,
    });
    let start = Instant::now();
    match name {
        "theta" => commands::theta(&input, &mut rep)?,
        "chain" => commands::chain(&input, &mut rep)?,
        "duality" => commands::duality(&input, &mut rep)?,
        "hoffman" => commands::hoffman(&input, &mut rep)?,
        "luz" => commands::luz(&input, &mut rep)?,
        "frac" => commands::frac(&input, &mut rep)?,
        "chifrac" => commands::chifrac(&input, &mut rep)?,
        _ => unreachable!("clap restricts command names"),
    }
    if opts.timings {
        rep.timings = Some(BTreeMap::from([("total_seconds".to_string(), start.elapsed().as_secs_f64())]));
    }
    let json = rep.to_json()?;
    match &opts.out {
        Some(path) => write_atomic(path, &json)?,
        None => print!("{json}"),
    }
    Ok(rep.ok(opts.strict))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, opts) = match &cli.command {
        Command::Theta(o) => ("theta", o),
        Command::Chain(o) => ("chain", o),
        Command::Duality(o) => ("duality", o),
        Command::Hoffman(o) => ("hoffman", o),
        Command::Luz(o) => ("luz", o),
        Command::Frac(o) => ("frac", o),
        Command::Chifrac(o) => ("chifrac", o),
    };
    match run(name, opts) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
