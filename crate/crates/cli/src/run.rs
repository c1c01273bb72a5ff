//! Pipeline orchestration for the command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use fixedbitset::FixedBitSet;
use hypergame_core::{
    build_stochastic_game, simulate_asw, solve_asw, verify_sure, Arena, Dfa, HtsState, HypergameError, P2Distribution,
    PerceptualGame, Player, RegionMode, Scope, SimError, SimulationConfig, SpecError, Synthesis, DEFAULT_STATE_CAP,
};

use crate::dot::{self, Highlight};
use crate::report::{self, Report};
use crate::schema::{load_arena_file, LoadError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Winning regions of both perceptual games.
    Perceptual,
    /// Stealthy deceptive sure-winning region and strategy.
    Sure,
    /// Stealthy deceptive almost-sure-winning region, levels and strategy.
    Asw,
    /// Monte-Carlo validation of the almost-sure strategy.
    Simulate,
    /// Exhaustive verification of the sure-winning strategy.
    Verify,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub mode: Mode,
    /// JSON report destination.
    pub out: Option<PathBuf>,
    /// DOT export destination.
    pub dot: Option<PathBuf>,
    pub trials: u64,
    /// Step cap per simulated play; defaults to 100 times the number of
    /// vertices of the stochastic game.
    pub cap: Option<usize>,
    pub seed: u64,
    /// Solve over the full `S x Q x Q` space instead of the reachable part.
    pub full_space: bool,
    pub dfa_cap: usize,
    pub regions: RegionMode,
    pub distribution: P2Distribution,
    /// Start vertex `s,q,p` for simulate and verify; defaults to the initial
    /// vertex.
    pub start: Option<String>,
    /// Step bound for verify; defaults to the number of solved vertices.
    pub bound: Option<usize>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, mode: Mode) -> Self {
        RunConfig {
            input: input.into(),
            mode,
            out: None,
            dot: None,
            trials: 10_000,
            cap: None,
            seed: 0,
            full_space: false,
            dfa_cap: DEFAULT_STATE_CAP,
            regions: RegionMode::Auto,
            distribution: P2Distribution::Uniform,
            start: None,
            bound: None,
        }
    }

    fn scope(&self) -> Scope {
        if self.full_space {
            Scope::Full
        } else {
            Scope::Reachable
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("objective: {0}")]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Synthesis(#[from] HypergameError),
    #[error(transparent)]
    Simulation(#[from] SimError),
    #[error("bad start vertex `{0}`: expected `state,q,p` with a known state and automaton states")]
    BadStart(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl RunError {
    /// 3 when a resource cap was exceeded, 1 for every other failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Spec(SpecError::StateCapExceeded { .. }) => 3,
            RunError::Load(LoadError::Spec(SpecError::StateCapExceeded { .. })) => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub report: Report,
    /// Human-readable summary.
    pub summary: String,
    /// 0 on success, 2 when verification found a counterexample.
    pub exit_code: u8,
}

pub fn run(config: &RunConfig) -> Result<RunOutcome, RunError> {
    let input = load_arena_file(&config.input)?;
    let dfa = input.dfa(config.dfa_cap)?;
    let syn = Synthesis::new(&input.arena, dfa, config.regions)?;
    let scope = config.scope();
    let (report, summary, dot_text, exit_code) = match config.mode {
        Mode::Perceptual => {
            let r = report::perceptual_report(&syn);
            let summary = perceptual_summary(&syn);
            let true_win = arena_win(&syn.arena, &syn.dfa, &syn.true_game);
            let perceived_win = arena_win(&syn.arena, &syn.dfa, &syn.perceived_game);
            let hl = Highlight {
                true_win: Some(&true_win),
                perceived_win: Some(&perceived_win),
                ..Highlight::default()
            };
            (Report::Perceptual(r), summary, dot::arena_dot(&syn.arena, &hl), 0)
        }
        Mode::Sure => {
            let sure = syn.deceptive_sure(scope)?;
            let r = report::sure_report(&syn, scope, &sure);
            let summary = format!(
                "deceptive sure-winning region ({} of {} vertices): {}\nstrategy: {}\n",
                r.region.len(),
                r.scope_size,
                join(r.region.iter().map(show_triple)),
                join(
                    r.strategy
                        .iter()
                        .map(|e| format!("{} -> {}", show_triple(&e.state), e.action))
                )
            );
            let dot_text = restricted_dot(&syn, sure.region(), &sure.scope);
            (Report::Sure(r), summary, dot_text, 0)
        }
        Mode::Asw => {
            let g = build_stochastic_game(&syn.hts, &syn.perceived_game, &syn.sr, scope)?;
            let asw = solve_asw(&g);
            let r = report::asw_report(&syn, scope, &g, &asw);
            let mut summary = format!(
                "deceptive almost-sure-winning region ({} of {} vertices): {}\n",
                r.region.len(),
                r.scope_size,
                join(r.region.iter().map(show_triple))
            );
            for (i, y) in r.levels.iter().enumerate() {
                writeln!(summary, "Y{i}: {}", join(y.iter().map(show_triple))).unwrap();
            }
            writeln!(
                summary,
                "strategy: {}",
                join(
                    r.strategy
                        .iter()
                        .map(|e| format!("{} -> {}", show_triple(&e.state), e.action))
                )
            )
            .unwrap();
            let hl = Highlight {
                true_win: Some(&asw.region),
                target: Some(g.target()),
                reachable: Some(g.scope()),
                ..Highlight::default()
            };
            let dot_text = dot::stochastic_dot(&syn.arena, &syn.hts, &g, &hl);
            (Report::Asw(r), summary, dot_text, 0)
        }
        Mode::Simulate => {
            let g = build_stochastic_game(&syn.hts, &syn.perceived_game, &syn.sr, scope)?;
            let asw = solve_asw(&g);
            let start = parse_start(&syn, config.start.as_deref())?;
            let cap = config.cap.unwrap_or(100 * g.scope().count_ones(..));
            let sim = SimulationConfig {
                trials: config.trials,
                cap,
                seed: config.seed,
                distribution: config.distribution,
            };
            let stats = simulate_asw(&g, &syn.hts, &syn.sr, &asw, start, &sim)?;
            let r = report::simulate_report(&syn, start, cap, distribution_name(config.distribution), &stats);
            let mut summary = format!(
                "start {}: {} wins in {} trials (rate {}), {} stealth violations, seed {}, cap {}\n",
                show_triple(&r.start),
                r.wins,
                r.trials,
                r.win_rate.map_or_else(|| "n/a".into(), |x| format!("{x:.4}")),
                r.stealth_violations,
                r.seed,
                r.cap
            );
            if !stats.start_in_region {
                summary.push_str("warning: start is outside the almost-sure winning region\n");
            }
            let hl = Highlight {
                true_win: Some(&asw.region),
                target: Some(g.target()),
                reachable: Some(g.scope()),
                ..Highlight::default()
            };
            let dot_text = dot::stochastic_dot(&syn.arena, &syn.hts, &g, &hl);
            (Report::Simulate(r), summary, dot_text, 0)
        }
        Mode::Verify => {
            let sure = syn.deceptive_sure(scope)?;
            let start = parse_start(&syn, config.start.as_deref())?;
            let bound = config.bound.unwrap_or(sure.scope.count_ones(..));
            let strategy = sure.strategy.completed(syn.restricted.graph(), Player::P1);
            let v = verify_sure(&syn.restricted, &strategy, start, bound)?;
            let r = report::verify_report(&syn, &v);
            let mut summary = format!(
                "start {}: {} (bound {})\n",
                show_triple(&r.start),
                if r.verified { "verified" } else { "not verified" },
                r.bound
            );
            if let Some(steps) = r.worst_case_steps {
                writeln!(summary, "worst-case steps: {steps}").unwrap();
            }
            if let Some(cex) = &r.counterexample {
                writeln!(
                    summary,
                    "counterexample ({}): {}",
                    cex.end,
                    join(cex.states.iter().map(show_triple))
                )
                .unwrap();
            }
            let code = if v.verified { 0 } else { 2 };
            let dot_text = restricted_dot(&syn, sure.region(), &sure.scope);
            (Report::Verify(r), summary, dot_text, code)
        }
    };
    if let Some(path) = &config.out {
        std::fs::write(path, report.to_json()).map_err(|source| RunError::Write {
            path: path.clone(),
            source,
        })?;
    }
    if let Some(path) = &config.dot {
        dot::write_dot(path, &dot_text).map_err(|source| RunError::Write {
            path: path.clone(),
            source,
        })?;
    }
    Ok(RunOutcome {
        report,
        summary,
        exit_code,
    })
}

/// Arena states from which P1 wins the perceptual game when play starts
/// there: `s` such that `(s, delta(iota, L(s)))` is P1-winning.
pub fn arena_win(arena: &Arena, dfa: &Dfa, game: &PerceptualGame) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(arena.num_states());
    for s in arena.states() {
        let q = dfa.step(dfa.initial(), arena.label(game.labeling(), s));
        if game.in_win(Player::P1, s, q) {
            out.insert(s.index());
        }
    }
    out
}

fn restricted_dot(syn: &Synthesis, region: &FixedBitSet, scope: &FixedBitSet) -> String {
    let hl = Highlight {
        true_win: Some(region),
        target: Some(syn.restricted.target()),
        reachable: Some(scope),
        ..Highlight::default()
    };
    dot::restricted_dot(&syn.arena, &syn.hts, &syn.restricted, &hl)
}

fn perceptual_summary(syn: &Synthesis) -> String {
    let mut out = String::new();
    for (name, game) in [("true", &syn.true_game), ("perceived", &syn.perceived_game)] {
        let win1 = arena_win(&syn.arena, &syn.dfa, game);
        let names = |p1: bool| {
            join(
                syn.arena
                    .states()
                    .filter(|s| win1.contains(s.index()) == p1)
                    .map(|s| syn.arena.state_name(s).to_string()),
            )
        };
        writeln!(
            out,
            "{name} labeling: P1 wins {{{}}}, P2 wins {{{}}}",
            names(true),
            names(false)
        )
        .unwrap();
    }
    out
}

fn parse_start(syn: &Synthesis, text: Option<&str>) -> Result<usize, RunError> {
    let Some(text) = text else {
        return Ok(syn.hts.initial());
    };
    let bad = || RunError::BadStart(text.to_string());
    let trimmed = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let mut parts = trimmed.rsplitn(3, ',');
    let p: usize = parts.next().and_then(|x| x.trim().parse().ok()).ok_or_else(bad)?;
    let q: usize = parts.next().and_then(|x| x.trim().parse().ok()).ok_or_else(bad)?;
    let name = parts.next().ok_or_else(bad)?.trim().trim_matches('"');
    let s = syn.arena.state_by_name(name).ok_or_else(bad)?;
    if q >= syn.hts.num_q() || p >= syn.hts.num_q() {
        return Err(bad());
    }
    Ok(syn.hts.index(HtsState { s, q, p }))
}

fn distribution_name(d: P2Distribution) -> String {
    match d {
        P2Distribution::Uniform => "uniform".into(),
        P2Distribution::Skewed { first } => format!("skewed:{first}"),
    }
}

fn show_triple(t: &report::Triple) -> String {
    format!("({},{},{})", t.0, t.1, t.2)
}

fn join<I: IntoIterator<Item = String>>(items: I) -> String {
    let items: Vec<String> = items.into_iter().collect();
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(", ")
    }
}
