use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use hypergame::{run, Mode, RunConfig};
use hypergame_core::{P2Distribution, RegionMode, DEFAULT_STATE_CAP};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Regions {
    /// Arena-level target marking when the objective allows it.
    Auto,
    /// Always solve the product games.
    Product,
    /// Always use arena-level target marking.
    Arena,
}

/// Synthesize stealthy deceptive strategies for games with labeling
/// misperception.
#[derive(Debug, Parser)]
#[command(name = "hypergame", version)]
struct Cli {
    /// Input document (JSON).
    input: PathBuf,
    #[arg(long, value_enum, default_value = "sure")]
    mode: Mode,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a Graphviz DOT rendering here.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Steps per simulated play [default: 100 x solved vertices].
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Solve over every (s, q, p) instead of the reachable part.
    #[arg(long)]
    full_space: bool,
    /// Maximum number of automaton states when compiling the objective.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    dfa_cap: usize,
    #[arg(long, value_enum, default_value = "auto")]
    regions: Regions,
    /// P2 randomization: `uniform`, or `skewed:W` to give the first support
    /// edge probability W.
    #[arg(long, default_value = "uniform", value_parser = parse_distribution)]
    p2_dist: P2Distribution,
    /// Start vertex `state,q,p` for simulate and verify [default: initial].
    #[arg(long)]
    start: Option<String>,
    /// Step bound for verify [default: solved vertices].
    #[arg(long)]
    bound: Option<usize>,
}

fn parse_distribution(s: &str) -> Result<P2Distribution, String> {
    if s == "uniform" {
        return Ok(P2Distribution::Uniform);
    }
    let w = s
        .strip_prefix("skewed:")
        .ok_or_else(|| format!("unknown distribution `{s}`"))?;
    let first: f64 = w.parse().map_err(|_| format!("bad weight `{w}`"))?;
    if !(first > 0.0 && first < 1.0) {
        return Err(format!("weight {first} is not in (0, 1)"));
    }
    Ok(P2Distribution::Skewed { first })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        out: cli.out,
        dot: cli.dot,
        trials: cli.trials,
        cap: cli.cap,
        seed: cli.seed,
        full_space: cli.full_space,
        dfa_cap: cli.dfa_cap,
        regions: match cli.regions {
            Regions::Auto => RegionMode::Auto,
            Regions::Product => RegionMode::Product,
            Regions::Arena => RegionMode::ArenaMarking,
        },
        distribution: cli.p2_dist,
        start: cli.start,
        bound: cli.bound,
        ..RunConfig::new(cli.input, cli.mode)
    };
    match run(&config) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
