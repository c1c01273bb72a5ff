//! Structured JSON reports. Regions are listed as `[state, q, p]` triples (or
//! `[state, q]` pairs for perceptual games) in arena-declaration order, then
//! by automaton states, so identical runs produce identical files.

use fixedbitset::FixedBitSet;
use hypergame_core::{
    Arena, AswResult, DeceptiveSure, Hts, Labeling, PerceptualGame, Player, Regions, Scope, SimulationStats,
    StochasticGame, Strategy, Synthesis, Trace, TraceEnd, VerificationReport,
};
use serde::Serialize;

/// An HTS state `(s, q, p)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Triple(pub String, pub usize, pub usize);

/// A product state `(s, q)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pair(pub String, pub usize);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyEntry<S> {
    pub state: S,
    pub action: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameRegions {
    pub labeling: &'static str,
    /// Arena-level regions, present when the objective was solved by target
    /// marking.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arena_win1: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arena_win2: Option<Vec<String>>,
    pub win1: Vec<Pair>,
    pub win2: Vec<Pair>,
    pub p1_strategy: Vec<StrategyEntry<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerceptualReport {
    pub region_mode: &'static str,
    pub games: Vec<GameRegions>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovedEdgeEntry {
    pub from: Triple,
    pub action: String,
    pub to: Triple,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SureReport {
    pub scope: &'static str,
    pub scope_size: usize,
    pub region: Vec<Triple>,
    pub strategy: Vec<StrategyEntry<Triple>>,
    pub removed_edges: Vec<RemovedEdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AswReport {
    pub scope: &'static str,
    pub scope_size: usize,
    pub region: Vec<Triple>,
    /// Cumulative level sets `Y0 ⊆ Y1 ⊆ ...` of the final inner fixed point.
    pub levels: Vec<Vec<Triple>>,
    /// Size of the candidate set at each outer iteration.
    pub outer_sizes: Vec<usize>,
    pub strategy: Vec<StrategyEntry<Triple>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateReport {
    pub start: Triple,
    pub start_in_region: bool,
    pub trials: u64,
    pub wins: u64,
    pub losses_by_cap: u64,
    /// `null` when no trial ran.
    pub win_rate: Option<f64>,
    pub stealth_violations: u64,
    pub seed: u64,
    pub cap: usize,
    pub distribution: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceReport {
    pub states: Vec<Triple>,
    pub actions: Vec<String>,
    pub end: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub start: Triple,
    pub bound: usize,
    pub verified: bool,
    pub worst_case_steps: Option<usize>,
    pub counterexample: Option<TraceReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Report {
    Perceptual(PerceptualReport),
    Sure(SureReport),
    Asw(AswReport),
    Simulate(SimulateReport),
    Verify(VerifyReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

pub fn triple(arena: &Arena, hts: &Hts, v: usize) -> Triple {
    let st = hts.state(v);
    Triple(arena.state_name(st.s).to_string(), st.q, st.p)
}

pub fn triples(arena: &Arena, hts: &Hts, set: &FixedBitSet) -> Vec<Triple> {
    set.ones().map(|v| triple(arena, hts, v)).collect()
}

fn hts_strategy(arena: &Arena, hts: &Hts, strategy: &Strategy, within: &FixedBitSet) -> Vec<StrategyEntry<Triple>> {
    strategy
        .iter()
        .filter(|&(v, _)| within.contains(v))
        .map(|(v, a)| StrategyEntry {
            state: triple(arena, hts, v),
            action: arena.action_name(a).to_string(),
        })
        .collect()
}

fn arena_states(arena: &Arena, regions: &Regions, player: Player) -> Vec<String> {
    arena
        .states()
        .filter(|s| regions.winner(s.index()) == player)
        .map(|s| arena.state_name(s).to_string())
        .collect()
}

pub fn game_regions(arena: &Arena, game: &PerceptualGame) -> GameRegions {
    let product = game.product();
    let regions = game.regions();
    let pairs = |player: Player| -> Vec<Pair> {
        (0..product.num_vertices())
            .filter(|&v| regions.winner(v) == player)
            .map(|v| {
                let (s, q) = product.state(v);
                Pair(arena.state_name(s).to_string(), q)
            })
            .collect()
    };
    let p1_strategy = game
        .solution()
        .p1
        .iter()
        .map(|(v, a)| {
            let (s, q) = product.state(v);
            StrategyEntry {
                state: Pair(arena.state_name(s).to_string(), q),
                action: arena.action_name(a).to_string(),
            }
        })
        .collect();
    GameRegions {
        labeling: match game.labeling() {
            Labeling::True => "true",
            Labeling::Perceived => "perceived",
        },
        arena_win1: game
            .arena_solution()
            .map(|s| arena_states(arena, &s.regions, Player::P1)),
        arena_win2: game
            .arena_solution()
            .map(|s| arena_states(arena, &s.regions, Player::P2)),
        win1: pairs(Player::P1),
        win2: pairs(Player::P2),
        p1_strategy,
    }
}

pub fn perceptual_report(syn: &Synthesis) -> PerceptualReport {
    PerceptualReport {
        region_mode: if syn.true_game.is_marking() { "arena" } else { "product" },
        games: vec![
            game_regions(&syn.arena, &syn.true_game),
            game_regions(&syn.arena, &syn.perceived_game),
        ],
    }
}

fn scope_name(scope: Scope) -> &'static str {
    match scope {
        Scope::Reachable => "reachable",
        Scope::Full => "full",
    }
}

pub fn sure_report(syn: &Synthesis, scope: Scope, sure: &DeceptiveSure) -> SureReport {
    let (arena, hts) = (&syn.arena, &syn.hts);
    SureReport {
        scope: scope_name(scope),
        scope_size: sure.scope.count_ones(..),
        region: triples(arena, hts, sure.region()),
        strategy: hts_strategy(arena, hts, &sure.strategy, sure.region()),
        removed_edges: syn
            .restricted
            .removed()
            .iter()
            .filter(|r| sure.scope.contains(r.from))
            .map(|r| RemovedEdgeEntry {
                from: triple(arena, hts, r.from),
                action: arena.action_name(r.action).to_string(),
                to: triple(arena, hts, r.to),
            })
            .collect(),
    }
}

pub fn asw_report(syn: &Synthesis, scope: Scope, g: &StochasticGame, asw: &AswResult) -> AswReport {
    let (arena, hts) = (&syn.arena, &syn.hts);
    AswReport {
        scope: scope_name(scope),
        scope_size: g.scope().count_ones(..),
        region: triples(arena, hts, &asw.region),
        levels: asw.levels.iter().map(|y| triples(arena, hts, y)).collect(),
        outer_sizes: asw.outer_sizes.clone(),
        strategy: hts_strategy(arena, hts, &asw.strategy, &asw.region),
    }
}

pub fn trace_report(arena: &Arena, hts: &Hts, trace: &Trace) -> TraceReport {
    TraceReport {
        states: trace.states.iter().map(|&v| triple(arena, hts, v)).collect(),
        actions: trace
            .actions
            .iter()
            .map(|&a| arena.action_name(a).to_string())
            .collect(),
        end: match trace.end {
            TraceEnd::ReachedTarget => "reached-target".into(),
            TraceEnd::CapHit => "cap-hit".into(),
            TraceEnd::Cycle { loop_start } => format!("cycle-from-{loop_start}"),
            TraceEnd::Stuck => "stuck".into(),
        },
    }
}

pub fn verify_report(syn: &Synthesis, report: &VerificationReport) -> VerifyReport {
    VerifyReport {
        start: triple(&syn.arena, &syn.hts, report.start),
        bound: report.bound,
        verified: report.verified,
        worst_case_steps: report.worst_case_steps,
        counterexample: report
            .counterexample
            .as_ref()
            .map(|t| trace_report(&syn.arena, &syn.hts, t)),
    }
}

pub fn simulate_report(
    syn: &Synthesis,
    start: usize,
    cap: usize,
    distribution: String,
    stats: &SimulationStats,
) -> SimulateReport {
    SimulateReport {
        start: triple(&syn.arena, &syn.hts, start),
        start_in_region: stats.start_in_region,
        trials: stats.trials,
        wins: stats.wins,
        losses_by_cap: stats.losses_by_cap,
        win_rate: stats.win_rate(),
        stealth_violations: stats.stealth_violations,
        seed: stats.seed,
        cap,
        distribution,
    }
}
