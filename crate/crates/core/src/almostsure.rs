//! Stealthy deceptive almost-sure winning.
//!
//! When P2 picks each of her subjectively rationalizable actions with some
//! positive probability, the restricted game becomes a one-player stochastic
//! game: P1 chooses at his states, P2's states are probabilistic with known
//! support but unknown probabilities. Almost-sure reachability only depends
//! on the supports, so the solver never looks at probabilities.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::arena::Player;
use crate::graph::{Edge, GameGraph};
use crate::hypergame::{Hts, HypergameError, PerceptualGame, Scope, SrActionMap};
use crate::reachsolver::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// P1 chooses one of the available actions.
    Choice,
    /// P2 moves randomly within the support.
    Probabilistic,
    /// Target vertex; absorbing.
    Sink,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticGame {
    /// Available actions of choice vertices and supports of probabilistic
    /// vertices, over the HTS index space. Sinks have no edges.
    graph: GameGraph,
    kinds: Vec<VertexKind>,
    target: FixedBitSet,
    scope: FixedBitSet,
    initial: usize,
}

impl StochasticGame {
    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn target(&self) -> &FixedBitSet {
        &self.target
    }

    /// The vertices the game is restricted to.
    pub fn scope(&self) -> &FixedBitSet {
        &self.scope
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Available actions (choice) or support (probabilistic) of `v`.
    pub fn edges(&self, v: usize) -> &[Edge] {
        self.graph.successors(v)
    }
}

/// Builds the one-player stochastic game from the HTS.
///
/// Outside the target, a P1 vertex whose perceived projection is P2-winning
/// may use every enabled action and one that is P1-winning only its SR
/// actions; a P2 vertex whose perceived projection is P2-winning randomizes
/// over her SR actions and one that is P1-winning over every enabled action.
/// Target vertices are sinks. With [`Scope::Reachable`] the game covers the
/// vertices reachable from the initial vertex when target vertices keep
/// their HTS edges, matching the restricted game.
pub fn build_stochastic_game(
    hts: &Hts,
    perceived: &PerceptualGame,
    sr: &SrActionMap,
    scope: Scope,
) -> Result<StochasticGame, HypergameError> {
    let nq = hts.num_q();
    if perceived.product().num_q() != nq || sr.num_q() != nq {
        return Err(HypergameError::Inconsistent(
            "automaton differs between HTS and perceived game",
        ));
    }
    if perceived.product().num_vertices() * nq != hts.num_vertices() {
        return Err(HypergameError::Inconsistent(
            "arena differs between HTS and perceived game",
        ));
    }
    let n = hts.num_vertices();
    let mut graph = GameGraph::new();
    let mut kinds = Vec::with_capacity(n);
    for v in 0..n {
        let owner = hts.owner(v);
        if hts.target().contains(v) {
            kinds.push(VertexKind::Sink);
            graph.push_vertex(owner, []);
            continue;
        }
        let st = hts.state(v);
        let perceived_winner = perceived.regions().winner(perceived.product().index(st.s, st.p));
        // Cases I-2 and II-1 restrict to SR actions; I-1 and II-2 do not.
        let restrict = perceived_winner == owner;
        let edges = hts
            .graph()
            .successors(v)
            .iter()
            .filter(|e| !restrict || sr.allows(st.s, st.p, owner, e.action))
            .copied();
        graph.push_vertex(owner, edges);
        kinds.push(match owner {
            Player::P1 => VertexKind::Choice,
            Player::P2 => VertexKind::Probabilistic,
        });
    }

    let scope = match scope {
        Scope::Full => {
            let mut all = FixedBitSet::with_capacity(n);
            all.insert_range(..);
            all
        }
        Scope::Reachable => {
            let mut seen = FixedBitSet::with_capacity(n);
            let mut stack = alloc::vec![hts.initial()];
            seen.insert(hts.initial());
            while let Some(v) = stack.pop() {
                let out = if kinds[v] == VertexKind::Sink {
                    hts.graph().successors(v)
                } else {
                    graph.successors(v)
                };
                for e in out {
                    if !seen.put(e.target) {
                        stack.push(e.target);
                    }
                }
            }
            seen
        }
    };

    Ok(StochasticGame {
        graph,
        kinds,
        target: hts.target().clone(),
        scope,
        initial: hts.initial(),
    })
}

/// Vertices of `x` from which P1 reaches `y` with positive probability in one
/// step while staying in `x` with probability one.
pub fn pre_step(y: &FixedBitSet, x: &FixedBitSet, g: &StochasticGame) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.num_vertices());
    for v in x.ones() {
        let edges = g.edges(v);
        let hit = match g.kind(v) {
            VertexKind::Choice => edges.iter().any(|e| y.contains(e.target)),
            VertexKind::Probabilistic => {
                edges.iter().all(|e| x.contains(e.target)) && edges.iter().any(|e| y.contains(e.target))
            }
            VertexKind::Sink => false,
        };
        if hit {
            out.insert(v);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AswResult {
    /// The almost-sure winning region `X*`.
    pub region: FixedBitSet,
    /// Cumulative level sets `Y_0 ⊆ Y_1 ⊆ … ⊆ Y_k = X*` of the final inner
    /// fixed point.
    pub levels: Vec<FixedBitSet>,
    /// P1's almost-sure strategy on the choice vertices of `X*` outside the
    /// target: from `Y_i \ Y_{i-1}` it moves into `Y_{i-1}`.
    pub strategy: Strategy,
    /// `|X_k|` for every outer iteration.
    pub outer_sizes: Vec<usize>,
}

impl AswResult {
    /// The first level containing `v`.
    pub fn level_of(&self, v: usize) -> Option<usize> {
        self.levels.iter().position(|y| y.contains(v))
    }
}

/// Nested fixed point for almost-sure reachability of the target.
///
/// The outer loop shrinks the candidate set `X`; the inner loop grows `Y`
/// from the target inside `X` by [`pre_step`]. When the inner fixed point
/// covers `X`, `X` is the almost-sure winning region.
pub fn solve_asw(g: &StochasticGame) -> AswResult {
    let mut x = g.scope().clone();
    let mut outer_sizes = alloc::vec![x.count_ones(..)];
    loop {
        let mut y = g.target().clone();
        y.intersect_with(&x);
        let mut levels = alloc::vec![y.clone()];
        loop {
            let mut next = pre_step(&y, &x, g);
            next.union_with(&y);
            if next == y {
                break;
            }
            y = next;
            levels.push(y.clone());
        }
        if y == x {
            let strategy = extract_strategy(g, &levels);
            return AswResult {
                region: x,
                levels,
                strategy,
                outer_sizes,
            };
        }
        x = y;
        outer_sizes.push(x.count_ones(..));
    }
}

fn extract_strategy(g: &StochasticGame, levels: &[FixedBitSet]) -> Strategy {
    let mut strategy = Strategy::empty(g.num_vertices());
    for i in 1..levels.len() {
        for v in levels[i].difference(&levels[i - 1]) {
            if g.kind(v) == VertexKind::Choice {
                let pick = g
                    .edges(v)
                    .iter()
                    .find(|e| levels[i - 1].contains(e.target))
                    .map(|e| e.action);
                debug_assert!(pick.is_some());
                strategy.set(v, pick);
            }
        }
    }
    strategy
}
