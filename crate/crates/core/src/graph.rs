//! Explicit turn-based game graphs in compressed sparse row form.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::arena::{ActionId, Arena, Player};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub action: ActionId,
    pub target: usize,
}

/// A deterministic turn-based game graph. Vertices are dense indices; the
/// out-edges of every vertex are sorted by action and carry at most one edge
/// per action. Vertices may be dead ends.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GameGraph {
    owners: Vec<Player>,
    offsets: Vec<usize>,
    edges: Vec<Edge>,
}

impl GameGraph {
    pub fn new() -> Self {
        GameGraph {
            owners: Vec::new(),
            offsets: vec![0],
            edges: Vec::new(),
        }
    }

    /// Appends a vertex with the given out-edges and returns its index.
    /// Edges are sorted by action here.
    pub fn push_vertex<I>(&mut self, owner: Player, edges: I) -> usize
    where
        I: IntoIterator<Item = Edge>,
    {
        if self.offsets.is_empty() {
            self.offsets.push(0);
        }
        let start = self.edges.len();
        self.edges.extend(edges);
        self.edges[start..].sort_unstable();
        debug_assert!(self.edges[start..].windows(2).all(|w| w[0].action != w[1].action));
        self.owners.push(owner);
        self.offsets.push(self.edges.len());
        self.owners.len() - 1
    }

    /// The arena itself as a game graph; vertex `i` is arena state `i`.
    pub fn from_arena(arena: &Arena) -> Self {
        let mut g = GameGraph::new();
        for s in arena.states() {
            g.push_vertex(
                arena.owner(s),
                arena.successors(s).iter().map(|&(action, t)| Edge {
                    action,
                    target: t.index(),
                }),
            );
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.owners.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owners[v]
    }

    pub fn successors(&self, v: usize) -> &[Edge] {
        &self.edges[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn successor(&self, v: usize, action: ActionId) -> Option<usize> {
        let out = self.successors(v);
        out.binary_search_by_key(&action, |e| e.action)
            .ok()
            .map(|i| out[i].target)
    }

    /// Predecessor lists in CSR form: `(offsets, sources)`.
    pub fn predecessors(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.num_vertices();
        let mut counts = vec![0usize; n + 1];
        for e in &self.edges {
            counts[e.target + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut sources = vec![0usize; self.edges.len()];
        for v in 0..n {
            for e in self.successors(v) {
                sources[fill[e.target]] = v;
                fill[e.target] += 1;
            }
        }
        (counts, sources)
    }

    /// Vertices reachable from `start` (inclusive).
    pub fn reachable_from(&self, start: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.num_vertices());
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for e in self.successors(v) {
                if !seen.put(e.target) {
                    stack.push(e.target);
                }
            }
        }
        seen
    }

    /// Sub-graph induced by `keep`. Edges leaving `keep` are dropped. Returns
    /// the graph and the original index of each new vertex.
    pub fn induced(&self, keep: &FixedBitSet) -> (GameGraph, Vec<usize>) {
        let old_of_new: Vec<usize> = keep.ones().collect();
        let mut new_of_old = vec![usize::MAX; self.num_vertices()];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let mut g = GameGraph::new();
        for &old in &old_of_new {
            g.push_vertex(
                self.owner(old),
                self.successors(old)
                    .iter()
                    .filter(|e| new_of_old[e.target] != usize::MAX)
                    .map(|e| Edge {
                        action: e.action,
                        target: new_of_old[e.target],
                    }),
            );
        }
        (g, old_of_new)
    }
}
