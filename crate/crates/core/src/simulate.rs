//! Validation of synthesized strategies.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::almostsure::{AswResult, StochasticGame, VertexKind};
use crate::arena::{ActionId, Player};
use crate::hypergame::{Hts, RestrictedGame, SrActionMap};
use crate::reachsolver::Strategy;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("strategy is undefined at P1 vertex {0} outside the target")]
    UndefinedStrategy(usize),
    #[error("strategy picks action {action:?} that is not available at vertex {vertex}")]
    IllegalAction { vertex: usize, action: ActionId },
    #[error("vertex {0} is outside the game")]
    UnknownVertex(usize),
    #[error("trace step {0} does not follow the transition system")]
    InconsistentTrace(usize),
    #[error("step cap must be at least 1")]
    ZeroCap,
    #[error("skewed distribution weight {0} is not in (0, 1)")]
    BadWeight(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEnd {
    ReachedTarget,
    CapHit,
    /// The last state repeats `states[loop_start]`.
    Cycle {
        loop_start: usize,
    },
    /// A vertex outside the target without available moves.
    Stuck,
}

/// A play: `states[i] --actions[i]--> states[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub states: Vec<usize>,
    pub actions: Vec<ActionId>,
    pub end: TraceEnd,
}

impl Trace {
    pub fn steps(&self) -> usize {
        self.actions.len()
    }

    pub fn reached_target(&self) -> bool {
        self.end == TraceEnd::ReachedTarget
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub start: usize,
    pub bound: usize,
    pub verified: bool,
    /// Longest play to the target under the strategy, when every play
    /// reaches it.
    pub worst_case_steps: Option<usize>,
    pub counterexample: Option<Trace>,
}

/// Checks that from `start` every play of `rg` consistent with `strategy`
/// reaches the target within `bound` steps, exploring all P2 choices.
///
/// The strategy-induced graph is searched depth-first: a cycle outside the
/// target or a dead end refutes the claim, otherwise the longest path to the
/// target is compared with `bound`.
pub fn verify_sure(
    rg: &RestrictedGame,
    strategy: &Strategy,
    start: usize,
    bound: usize,
) -> Result<VerificationReport, SimError> {
    let graph = rg.graph();
    let n = graph.num_vertices();
    if start >= n {
        return Err(SimError::UnknownVertex(start));
    }
    let moves = |v: usize| -> Result<Vec<(ActionId, usize)>, SimError> {
        if rg.target().contains(v) {
            return Ok(Vec::new());
        }
        match graph.owner(v) {
            Player::P1 if graph.successors(v).is_empty() => Ok(Vec::new()),
            Player::P1 => {
                let a = strategy.get(v).ok_or(SimError::UndefinedStrategy(v))?;
                let t = graph
                    .successor(v, a)
                    .ok_or(SimError::IllegalAction { vertex: v, action: a })?;
                Ok(vec![(a, t)])
            }
            Player::P2 => Ok(graph.successors(v).iter().map(|e| (e.action, e.target)).collect()),
        }
    };

    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; n];
    let mut dist = vec![0usize; n];
    let mut worst: Vec<Option<(ActionId, usize)>> = vec![None; n];

    // (vertex, its moves, next move index)
    type Frame = (usize, Vec<(ActionId, usize)>, usize);
    let mut stack: Vec<Frame> = Vec::new();
    color[start] = GRAY;
    stack.push((start, moves(start)?, 0));

    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.2 < top.1.len() {
            let (_, w) = top.1[top.2];
            top.2 += 1;
            match color[w] {
                WHITE => {
                    color[w] = GRAY;
                    let m = moves(w)?;
                    stack.push((w, m, 0));
                }
                GRAY => {
                    let mut states: Vec<usize> = stack.iter().map(|f| f.0).collect();
                    let actions: Vec<ActionId> = stack.iter().map(|f| f.1[f.2 - 1].0).collect();
                    let loop_start = states
                        .iter()
                        .position(|&u| u == w)
                        .expect("gray vertices are on the stack");
                    states.push(w);
                    return Ok(VerificationReport {
                        start,
                        bound,
                        verified: false,
                        worst_case_steps: None,
                        counterexample: Some(Trace {
                            states,
                            actions,
                            end: TraceEnd::Cycle { loop_start },
                        }),
                    });
                }
                _ => {}
            }
            continue;
        }
        // All moves of v explored.
        if top.1.is_empty() && !rg.target().contains(v) {
            let states: Vec<usize> = stack.iter().map(|f| f.0).collect();
            let actions: Vec<ActionId> = stack[..stack.len() - 1].iter().map(|f| f.1[f.2 - 1].0).collect();
            return Ok(VerificationReport {
                start,
                bound,
                verified: false,
                worst_case_steps: None,
                counterexample: Some(Trace {
                    states,
                    actions,
                    end: TraceEnd::Stuck,
                }),
            });
        }
        let mut best: Option<(ActionId, usize)> = None;
        for &(a, w) in &top.1 {
            if best.is_none_or(|(_, b)| dist[w] > dist[b]) {
                best = Some((a, w));
            }
        }
        dist[v] = best.map_or(0, |(_, w)| dist[w] + 1);
        worst[v] = best;
        color[v] = BLACK;
        stack.pop();
    }

    if dist[start] <= bound {
        return Ok(VerificationReport {
            start,
            bound,
            verified: true,
            worst_case_steps: Some(dist[start]),
            counterexample: None,
        });
    }
    let mut states = vec![start];
    let mut actions = Vec::new();
    let mut v = start;
    while let Some((a, w)) = worst[v] {
        actions.push(a);
        states.push(w);
        v = w;
        if actions.len() > bound {
            break;
        }
    }
    Ok(VerificationReport {
        start,
        bound,
        verified: false,
        worst_case_steps: Some(dist[start]),
        counterexample: Some(Trace {
            states,
            actions,
            end: TraceEnd::CapHit,
        }),
    })
}

/// How P2 randomizes over the support of a probabilistic vertex.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum P2Distribution {
    #[default]
    Uniform,
    /// The first edge (smallest action) gets probability `first`; the rest
    /// share the remainder uniformly.
    Skewed { first: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub trials: u64,
    /// Maximum number of steps per play.
    pub cap: usize,
    pub seed: u64,
    pub distribution: P2Distribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationStats {
    pub trials: u64,
    pub wins: u64,
    /// Plays that did not reach the target within the cap.
    pub losses_by_cap: u64,
    pub stealth_violations: u64,
    pub seed: u64,
    /// Whether the start vertex lies in the almost-sure winning region. When
    /// it does not, a win rate below one is expected.
    pub start_in_region: bool,
}

impl SimulationStats {
    /// `None` for a run without trials.
    pub fn win_rate(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.wins as f64 / self.trials as f64)
    }
}

/// The random stream of trial `trial`: depends only on `(seed, trial)`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Plays one game of at most `cap` steps from `start`. P1 follows
/// `strategy` (falling back to its smallest available action where it is
/// undefined); P2 samples from the support.
pub fn simulate_trial<R: Rng>(
    g: &StochasticGame,
    strategy: &Strategy,
    start: usize,
    cap: usize,
    distribution: P2Distribution,
    rng: &mut R,
) -> Trace {
    let mut states = vec![start];
    let mut actions = Vec::new();
    let mut v = start;
    loop {
        if g.target().contains(v) {
            return Trace {
                states,
                actions,
                end: TraceEnd::ReachedTarget,
            };
        }
        if actions.len() >= cap {
            return Trace {
                states,
                actions,
                end: TraceEnd::CapHit,
            };
        }
        let edges = g.edges(v);
        if edges.is_empty() {
            return Trace {
                states,
                actions,
                end: TraceEnd::Stuck,
            };
        }
        let edge = match g.kind(v) {
            VertexKind::Choice => strategy
                .get(v)
                .and_then(|a| edges.iter().find(|e| e.action == a))
                .unwrap_or(&edges[0]),
            _ => {
                let k = match distribution {
                    P2Distribution::Uniform => rng.random_range(0..edges.len()),
                    P2Distribution::Skewed { first } => {
                        if edges.len() == 1 || rng.random::<f64>() < first {
                            0
                        } else {
                            1 + rng.random_range(0..edges.len() - 1)
                        }
                    }
                };
                &edges[k]
            }
        };
        actions.push(edge.action);
        states.push(edge.target);
        v = edge.target;
    }
}

/// Monte-Carlo validation of an almost-sure strategy from `start`.
///
/// Each trial draws from [`trial_rng`]`(seed, trial)`, so results do not
/// depend on execution order. Every trace is checked with [`audit_stealth`].
pub fn simulate_asw(
    g: &StochasticGame,
    hts: &Hts,
    sr: &SrActionMap,
    asw: &AswResult,
    start: usize,
    config: &SimulationConfig,
) -> Result<SimulationStats, SimError> {
    if start >= g.num_vertices() {
        return Err(SimError::UnknownVertex(start));
    }
    if config.cap == 0 {
        return Err(SimError::ZeroCap);
    }
    if let P2Distribution::Skewed { first } = config.distribution {
        if !(first > 0.0 && first < 1.0) {
            return Err(SimError::BadWeight(first));
        }
    }
    let mut stats = SimulationStats {
        trials: config.trials,
        wins: 0,
        losses_by_cap: 0,
        stealth_violations: 0,
        seed: config.seed,
        start_in_region: asw.region.contains(start),
    };
    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let trace = simulate_trial(g, &asw.strategy, start, config.cap, config.distribution, &mut rng);
        if trace.reached_target() {
            stats.wins += 1;
        } else {
            stats.losses_by_cap += 1;
        }
        if !audit_stealth(&trace, hts, sr)? {
            stats.stealth_violations += 1;
        }
    }
    Ok(stats)
}

/// True iff every P1 action taken before the trace first enters the target
/// is subjectively rationalizable at the perceived projection of its state.
pub fn audit_stealth(trace: &Trace, hts: &Hts, sr: &SrActionMap) -> Result<bool, SimError> {
    if trace.states.len() != trace.actions.len() + 1 {
        return Err(SimError::InconsistentTrace(trace.actions.len()));
    }
    for (i, &a) in trace.actions.iter().enumerate() {
        let v = trace.states[i];
        if v >= hts.num_vertices() {
            return Err(SimError::UnknownVertex(v));
        }
        if hts.step(v, a) != Some(trace.states[i + 1]) {
            return Err(SimError::InconsistentTrace(i));
        }
    }
    for (i, &a) in trace.actions.iter().enumerate() {
        let v = trace.states[i];
        if hts.target().contains(v) {
            break;
        }
        if hts.owner(v) == Player::P1 {
            let st = hts.state(v);
            if !sr.allows(st.s, st.p, Player::P1, a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almostsure::{build_stochastic_game, solve_asw};
    use crate::arena::running_example;
    use crate::hypergame::{RegionMode, Scope, Synthesis};
    use crate::speclang::{compile_to_dfa, parse_formula, DEFAULT_STATE_CAP};

    fn example() -> Synthesis {
        let arena = running_example();
        let dfa = compile_to_dfa(
            &parse_formula("F A", arena.props()).unwrap(),
            arena.props(),
            DEFAULT_STATE_CAP,
        )
        .unwrap();
        Synthesis::new(&arena, dfa, RegionMode::ArenaMarking).unwrap()
    }

    fn act(syn: &Synthesis, name: &str) -> ActionId {
        syn.arena.action_by_name(name).unwrap()
    }

    #[test]
    fn verify_from_sure_region_and_target() {
        let syn = example();
        let sure = syn.deceptive_sure(Scope::Reachable).unwrap();
        let bound = syn.restricted.reachable_count();
        let r = verify_sure(&syn.restricted, &sure.strategy, syn.hts_index(4, 0, 0), bound).unwrap();
        assert!(r.verified);
        assert_eq!(r.worst_case_steps, Some(1));
        let r = verify_sure(&syn.restricted, &sure.strategy, syn.hts_index(5, 1, 0), bound).unwrap();
        assert!(r.verified);
        assert_eq!(r.worst_case_steps, Some(0));
    }

    #[test]
    fn verify_finds_the_p2_loop() {
        let syn = example();
        let sure = syn.deceptive_sure(Scope::Reachable).unwrap();
        let strat = sure.strategy.completed(syn.restricted.graph(), Player::P1);
        let start = syn.hts_index(1, 0, 0);
        let r = verify_sure(&syn.restricted, &strat, start, syn.restricted.reachable_count()).unwrap();
        assert!(!r.verified);
        let cex = r.counterexample.unwrap();
        assert_eq!(cex.states, [start, syn.hts_index(0, 0, 0), start]);
        assert_eq!(cex.actions, [act(&syn, "1->0"), act(&syn, "0->1")]);
        assert_eq!(cex.end, TraceEnd::Cycle { loop_start: 0 });
        // Without completion the strategy is undefined at (0,0,0).
        let err = verify_sure(&syn.restricted, &sure.strategy, start, 7).unwrap_err();
        assert_eq!(err, SimError::UndefinedStrategy(syn.hts_index(0, 0, 0)));
    }

    #[test]
    fn verify_respects_the_bound() {
        let syn = example();
        let sure = syn.deceptive_sure(Scope::Reachable).unwrap();
        let r = verify_sure(&syn.restricted, &sure.strategy, syn.hts_index(4, 0, 0), 0).unwrap();
        assert!(!r.verified);
        assert_eq!(r.counterexample.unwrap().end, TraceEnd::CapHit);
    }

    #[test]
    fn audit_examples() {
        let syn = example();
        let i = |s, q, p| syn.hts_index(s, q, p);
        let good = Trace {
            states: vec![i(0, 0, 0), i(1, 0, 0), i(4, 0, 0), i(5, 1, 0)],
            actions: vec![act(&syn, "0->1"), act(&syn, "1->4"), act(&syn, "4->5")],
            end: TraceEnd::ReachedTarget,
        };
        assert_eq!(audit_stealth(&good, &syn.hts, &syn.sr), Ok(true));
        let bad = Trace {
            states: vec![i(3, 0, 0), i(4, 0, 0), i(5, 1, 0)],
            actions: vec![act(&syn, "3->4"), act(&syn, "4->5")],
            end: TraceEnd::ReachedTarget,
        };
        assert_eq!(audit_stealth(&bad, &syn.hts, &syn.sr), Ok(false));
        // Inside the target anything goes.
        let inside = Trace {
            states: vec![i(5, 1, 0), i(6, 1, 0)],
            actions: vec![act(&syn, "5->6")],
            end: TraceEnd::ReachedTarget,
        };
        assert_eq!(audit_stealth(&inside, &syn.hts, &syn.sr), Ok(true));
        let broken = Trace {
            states: vec![i(0, 0, 0), i(4, 0, 0)],
            actions: vec![act(&syn, "0->1")],
            end: TraceEnd::CapHit,
        };
        assert_eq!(
            audit_stealth(&broken, &syn.hts, &syn.sr),
            Err(SimError::InconsistentTrace(0))
        );
    }

    fn asw_setup(syn: &Synthesis) -> (StochasticGame, AswResult) {
        let g = build_stochastic_game(&syn.hts, &syn.perceived_game, &syn.sr, Scope::Reachable).unwrap();
        let res = solve_asw(&g);
        (g, res)
    }

    #[test]
    fn simulation_is_reproducible_and_stealthy() {
        let syn = example();
        let (g, res) = asw_setup(&syn);
        let cfg = SimulationConfig {
            trials: 500,
            cap: 800,
            seed: 7,
            distribution: P2Distribution::Uniform,
        };
        let a = simulate_asw(&g, &syn.hts, &syn.sr, &res, syn.hts.initial(), &cfg).unwrap();
        let b = simulate_asw(&g, &syn.hts, &syn.sr, &res, syn.hts.initial(), &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.wins + a.losses_by_cap, a.trials);
        assert_eq!(a.wins, 500);
        assert_eq!(a.stealth_violations, 0);
        assert!(a.start_in_region);
    }

    #[test]
    fn zero_trials_and_bad_config() {
        let syn = example();
        let (g, res) = asw_setup(&syn);
        let cfg = SimulationConfig {
            trials: 0,
            cap: 10,
            seed: 1,
            distribution: P2Distribution::Uniform,
        };
        let s = simulate_asw(&g, &syn.hts, &syn.sr, &res, syn.hts.initial(), &cfg).unwrap();
        assert_eq!(s.win_rate(), None);
        let cfg = SimulationConfig { cap: 0, ..cfg };
        assert_eq!(
            simulate_asw(&g, &syn.hts, &syn.sr, &res, 0, &cfg),
            Err(SimError::ZeroCap)
        );
        let cfg = SimulationConfig {
            cap: 5,
            distribution: P2Distribution::Skewed { first: 1.5 },
            ..cfg
        };
        assert_eq!(
            simulate_asw(&g, &syn.hts, &syn.sr, &res, 0, &cfg),
            Err(SimError::BadWeight(1.5))
        );
    }

    #[test]
    fn trial_streams_are_independent_of_order() {
        let syn = example();
        let (g, res) = asw_setup(&syn);
        let start = syn.hts.initial();
        let forward: Vec<_> = (0..20)
            .map(|t| {
                simulate_trial(
                    &g,
                    &res.strategy,
                    start,
                    50,
                    P2Distribution::Uniform,
                    &mut trial_rng(3, t),
                )
            })
            .collect();
        let backward: Vec<_> = (0..20)
            .rev()
            .map(|t| {
                simulate_trial(
                    &g,
                    &res.strategy,
                    start,
                    50,
                    P2Distribution::Uniform,
                    &mut trial_rng(3, t),
                )
            })
            .collect();
        assert!(forward.iter().eq(backward.iter().rev()));
    }
}
