//! Two-player reachability games solved by attractor computation.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::arena::{ActionId, Player};
use crate::graph::GameGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("target vertex {vertex} is outside the game ({vertices} vertices)")]
    UnknownTarget { vertex: usize, vertices: usize },
}

/// Determinacy partition of a reachability game. `win2` is the complement of
/// `win1`; `level` is the attractor rank of every P1-winning vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regions {
    win1: FixedBitSet,
    level: Vec<Option<u32>>,
}

impl Regions {
    pub fn from_levels(level: Vec<Option<u32>>) -> Self {
        let mut win1 = FixedBitSet::with_capacity(level.len());
        win1.extend(level.iter().enumerate().filter(|(_, l)| l.is_some()).map(|(v, _)| v));
        Regions { win1, level }
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    pub fn win1(&self) -> &FixedBitSet {
        &self.win1
    }

    pub fn win2(&self) -> FixedBitSet {
        let mut w = self.win1.clone();
        w.toggle_range(..);
        w
    }

    pub fn is_win1(&self, v: usize) -> bool {
        self.win1.contains(v)
    }

    pub fn winner(&self, v: usize) -> Player {
        if self.is_win1(v) {
            Player::P1
        } else {
            Player::P2
        }
    }

    pub fn level(&self, v: usize) -> Option<u32> {
        self.level[v]
    }
}

/// A memoryless deterministic strategy: at most one action per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Strategy {
    choice: Vec<Option<ActionId>>,
}

impl Strategy {
    pub fn empty(vertices: usize) -> Self {
        Strategy {
            choice: vec![None; vertices],
        }
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<ActionId> {
        self.choice.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: usize, action: Option<ActionId>) {
        self.choice[v] = action;
    }

    /// `(vertex, action)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, ActionId)> + '_ {
        self.choice.iter().enumerate().filter_map(|(v, a)| a.map(|a| (v, a)))
    }

    /// Fills every undefined vertex owned by `player` that has an enabled
    /// action with its smallest action.
    pub fn completed(&self, graph: &GameGraph, player: Player) -> Strategy {
        let mut out = self.clone();
        out.choice.resize(graph.num_vertices(), None);
        for v in 0..graph.num_vertices() {
            if out.choice[v].is_none() && graph.owner(v) == player {
                out.choice[v] = graph.successors(v).first().map(|e| e.action);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachSolution {
    pub regions: Regions,
    /// Defined at P1 vertices of `win1` outside the target; picks the
    /// smallest action that lowers the level.
    pub p1: Strategy,
    /// Defined at P2 vertices of `win2`; picks the smallest action that stays
    /// in `win2`.
    pub p2: Strategy,
}

/// Solves the reachability game for P1 towards `target`.
///
/// `win1` is the P1-attractor of the target, computed by backward induction
/// with per-vertex successor counters in `O(|V| + |E|)`. A vertex without
/// successors is lost by its owner: a P1 dead end outside the target never
/// joins the attractor, a P2 dead end joins it at level 1.
pub fn solve_reachability(game: &GameGraph, target: &FixedBitSet) -> Result<ReachSolution, SolveError> {
    let n = game.num_vertices();
    if let Some(v) = target.ones().find(|&v| v >= n) {
        return Err(SolveError::UnknownTarget { vertex: v, vertices: n });
    }
    let (pred_off, preds) = game.predecessors();
    let mut level: Vec<Option<u32>> = vec![None; n];
    let mut remaining: Vec<usize> = (0..n).map(|v| game.successors(v).len()).collect();
    let mut queue = VecDeque::new();

    for v in target.ones() {
        level[v] = Some(0);
        queue.push_back(v);
    }
    for v in 0..n {
        if level[v].is_none() && game.owner(v) == Player::P2 && remaining[v] == 0 {
            level[v] = Some(1);
            queue.push_back(v);
        }
    }

    // FIFO order visits vertices by non-decreasing level, so the first
    // trigger of a P1 vertex is its best successor and the last trigger of a
    // P2 vertex is its worst one.
    while let Some(v) = queue.pop_front() {
        let lv = level[v].expect("queued vertices are ranked");
        for &u in &preds[pred_off[v]..pred_off[v + 1]] {
            if level[u].is_some() {
                continue;
            }
            match game.owner(u) {
                Player::P1 => {
                    level[u] = Some(lv + 1);
                    queue.push_back(u);
                }
                Player::P2 => {
                    remaining[u] -= 1;
                    if remaining[u] == 0 {
                        level[u] = Some(lv + 1);
                        queue.push_back(u);
                    }
                }
            }
        }
    }

    let regions = Regions::from_levels(level);
    let mut p1 = Strategy::empty(n);
    let mut p2 = Strategy::empty(n);
    for v in 0..n {
        match (game.owner(v), regions.level(v)) {
            (Player::P1, Some(l)) if l > 0 => {
                let pick = game
                    .successors(v)
                    .iter()
                    .find(|e| regions.level(e.target).is_some_and(|m| m < l))
                    .map(|e| e.action);
                debug_assert!(pick.is_some());
                p1.set(v, pick);
            }
            (Player::P2, None) => {
                let pick = game
                    .successors(v)
                    .iter()
                    .find(|e| !regions.is_win1(e.target))
                    .map(|e| e.action);
                p2.set(v, pick);
            }
            _ => {}
        }
    }
    Ok(ReachSolution { regions, p1, p2 })
}
