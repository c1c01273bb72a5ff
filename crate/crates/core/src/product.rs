//! Synchronous product of an arena with the objective automaton.

use fixedbitset::FixedBitSet;

use crate::arena::{ActionId, Arena, Labeling, StateId};
use crate::graph::{Edge, GameGraph};
use crate::speclang::Dfa;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error("automaton alphabet does not match the arena's propositions")]
    AlphabetMismatch,
}

/// The product game over the full space `S x Q`. Vertex `(s, q)` has index
/// `s * |Q| + q`; reaching the target `S x F` means the objective holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGame {
    graph: GameGraph,
    num_q: usize,
    labeling: Labeling,
    initial: usize,
    target: FixedBitSet,
}

impl ProductGame {
    /// Transitions are `((s, q), a) -> (T(s, a), delta(q, L(T(s, a))))` under
    /// the chosen labeling; the initial vertex consumes the label of `s0`.
    pub fn build(arena: &Arena, labeling: Labeling, dfa: &Dfa) -> Result<Self, ProductError> {
        if dfa.props() != arena.props() {
            return Err(ProductError::AlphabetMismatch);
        }
        let nq = dfa.num_states();
        let mut graph = GameGraph::new();
        let mut target = FixedBitSet::with_capacity(arena.num_states() * nq);
        for s in arena.states() {
            for q in 0..nq {
                let v = graph.push_vertex(
                    arena.owner(s),
                    arena.successors(s).iter().map(|&(action, t)| Edge {
                        action,
                        target: t.index() * nq + dfa.step(q, arena.label(labeling, t)),
                    }),
                );
                if dfa.is_accepting(q) {
                    target.insert(v);
                }
            }
        }
        let s0 = arena.initial();
        let q0 = dfa.step(dfa.initial(), arena.label(labeling, s0));
        Ok(ProductGame {
            graph,
            num_q: nq,
            labeling,
            initial: s0.index() * nq + q0,
            target,
        })
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn num_q(&self) -> usize {
        self.num_q
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// The target `S x F`.
    pub fn target(&self) -> &FixedBitSet {
        &self.target
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn index(&self, s: StateId, q: usize) -> usize {
        s.index() * self.num_q + q
    }

    pub fn state(&self, v: usize) -> (StateId, usize) {
        (StateId((v / self.num_q) as u32), v % self.num_q)
    }

    pub fn step(&self, v: usize, action: ActionId) -> Option<usize> {
        self.graph.successor(v, action)
    }
}
