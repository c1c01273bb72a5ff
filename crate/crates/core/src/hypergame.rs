//! Level-2 hypergames with labeling misperception.
//!
//! P1 plays the product under the true labeling, P2 the product under the
//! perceived one. The hypergame transition system tracks both automaton
//! copies at once. Subjectively rationalizable (SR) actions are those that
//! keep a player inside its winning region of P2's perceptual game; the
//! restricted game removes every non-SR action before P1 has reached its true
//! winning region, and P1's sure-winning strategy there is stealthy and
//! deceptive.

use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::arena::{ActionId, Arena, ArenaError, Labeling, Player, StateId};
use crate::graph::{Edge, GameGraph};
use crate::product::{ProductError, ProductGame};
use crate::reachsolver::{solve_reachability, ReachSolution, Regions, SolveError, Strategy};
use crate::speclang::Dfa;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergameError {
    #[error(transparent)]
    Arena(#[from] ArenaError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("arena-level target marking needs an objective of the form `F p` with p propositional")]
    MarkingUnsupported,
    #[error("inconsistent inputs: {0}")]
    Inconsistent(&'static str),
    #[error("state {state} is owned by {owner}, not {player}")]
    NotOwner { state: u32, owner: Player, player: Player },
    #[error("unknown product state ({s}, {q})")]
    UnknownState { s: u32, q: usize },
}

/// How the winning regions of the perceptual games are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RegionMode {
    /// Solve each product game over `S x Q` with target `S x F`.
    Product,
    /// Solve the arena with target `{s | L(s) is accepted in one step}` and
    /// lift the regions to every automaton state. Only available for
    /// objectives where [`Dfa::is_single_step_reach`] holds. The lifted
    /// regions are sound but ignore progress already recorded in `q`.
    ArenaMarking,
    /// `ArenaMarking` when the objective allows it, `Product` otherwise.
    #[default]
    Auto,
}

impl RegionMode {
    fn resolve(self, dfa: &Dfa) -> Result<bool, HypergameError> {
        match self {
            RegionMode::Product => Ok(false),
            RegionMode::ArenaMarking if dfa.is_single_step_reach() => Ok(true),
            RegionMode::ArenaMarking => Err(HypergameError::MarkingUnsupported),
            RegionMode::Auto => Ok(dfa.is_single_step_reach()),
        }
    }
}

/// Which part of the hypergame state space the solvers work on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scope {
    /// States reachable from the initial state in the restricted game.
    #[default]
    Reachable,
    Full,
}

/// One player's perceptual game: the product under one labeling and its
/// solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerceptualGame {
    product: ProductGame,
    solution: ReachSolution,
    target: FixedBitSet,
    arena_solution: Option<ReachSolution>,
}

impl PerceptualGame {
    pub fn product(&self) -> &ProductGame {
        &self.product
    }

    pub fn labeling(&self) -> Labeling {
        self.product.labeling()
    }

    /// Regions over the product vertices `(s, q)`.
    pub fn regions(&self) -> &Regions {
        &self.solution.regions
    }

    pub fn solution(&self) -> &ReachSolution {
        &self.solution
    }

    /// The target the regions were solved for.
    pub fn target(&self) -> &FixedBitSet {
        &self.target
    }

    /// Arena-level solution when the regions came from target marking.
    pub fn arena_solution(&self) -> Option<&ReachSolution> {
        self.arena_solution.as_ref()
    }

    pub fn is_marking(&self) -> bool {
        self.arena_solution.is_some()
    }

    pub fn in_win(&self, player: Player, s: StateId, q: usize) -> bool {
        let v = self.product.index(s, q);
        self.regions().winner(v) == player
    }
}

/// Solves the perceptual game of one labeling.
pub fn solve_perceptual(
    arena: &Arena,
    labeling: Labeling,
    dfa: &Dfa,
    mode: RegionMode,
) -> Result<PerceptualGame, HypergameError> {
    let product = ProductGame::build(arena, labeling, dfa)?;
    if !mode.resolve(dfa)? {
        let solution = solve_reachability(product.graph(), product.target())?;
        return Ok(PerceptualGame {
            target: product.target().clone(),
            product,
            solution,
            arena_solution: None,
        });
    }

    let graph = GameGraph::from_arena(arena);
    let mut marked = FixedBitSet::with_capacity(arena.num_states());
    for s in arena.states() {
        if dfa.is_accepting(dfa.step(dfa.initial(), arena.label(labeling, s))) {
            marked.insert(s.index());
        }
    }
    let arena_solution = solve_reachability(&graph, &marked)?;

    let nq = dfa.num_states();
    let n = product.num_vertices();
    let mut level = Vec::with_capacity(n);
    let mut p1 = Strategy::empty(n);
    let mut p2 = Strategy::empty(n);
    let mut target = FixedBitSet::with_capacity(n);
    for v in 0..n {
        let s = v / nq;
        level.push(arena_solution.regions.level(s));
        p1.set(v, arena_solution.p1.get(s));
        p2.set(v, arena_solution.p2.get(s));
        if marked.contains(s) {
            target.insert(v);
        }
    }
    Ok(PerceptualGame {
        product,
        solution: ReachSolution {
            regions: Regions::from_levels(level),
            p1,
            p2,
        },
        target,
        arena_solution: Some(arena_solution),
    })
}

/// A state `(s, q, p)` of the hypergame transition system: arena state, true
/// automaton state and perceived automaton state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HtsState {
    pub s: StateId,
    pub q: usize,
    pub p: usize,
}

impl fmt::Display for HtsState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.s.0, self.q, self.p)
    }
}

/// The hypergame transition system over the full space `S x Q x Q`.
///
/// Vertex `(s, q, p)` has index `(s * |Q| + q) * |Q| + p`. The target is
/// `{(s, q, p) | (s, q) in Win1 of the true game}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hts {
    graph: GameGraph,
    num_q: usize,
    initial: usize,
    target: FixedBitSet,
    reachable: FixedBitSet,
}

impl Hts {
    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn num_q(&self) -> usize {
        self.num_q
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn target(&self) -> &FixedBitSet {
        &self.target
    }

    /// Vertices reachable from the initial vertex in the unrestricted system.
    pub fn reachable(&self) -> &FixedBitSet {
        &self.reachable
    }

    pub fn owner(&self, v: usize) -> Player {
        self.graph.owner(v)
    }

    pub fn index(&self, st: HtsState) -> usize {
        (st.s.index() * self.num_q + st.q) * self.num_q + st.p
    }

    pub fn state(&self, v: usize) -> HtsState {
        let p = v % self.num_q;
        let sq = v / self.num_q;
        HtsState {
            s: StateId((sq / self.num_q) as u32),
            q: sq % self.num_q,
            p,
        }
    }

    pub fn step(&self, v: usize, action: ActionId) -> Option<usize> {
        self.graph.successor(v, action)
    }

    /// Index into the perceived product of the `(s, p)` projection.
    fn perceived_index(&self, v: usize) -> usize {
        let st = self.state(v);
        st.s.index() * self.num_q + st.p
    }
}

/// Builds the hypergame transition system. `true_game` must be the solved
/// perceptual game of the true labeling over the same automaton.
pub fn build_hts(arena: &Arena, dfa: &Dfa, true_game: &PerceptualGame) -> Result<Hts, HypergameError> {
    let nq = dfa.num_states();
    if true_game.labeling() != Labeling::True {
        return Err(HypergameError::Inconsistent(
            "the target must come from the true-labeling game",
        ));
    }
    if true_game.product().num_q() != nq || true_game.product().num_vertices() != arena.num_states() * nq {
        return Err(HypergameError::Inconsistent(
            "true game was built over a different automaton",
        ));
    }
    if dfa.props() != arena.props() {
        return Err(ProductError::AlphabetMismatch.into());
    }
    let mut graph = GameGraph::new();
    let mut target = FixedBitSet::with_capacity(arena.num_states() * nq * nq);
    for s in arena.states() {
        for q in 0..nq {
            let winning = true_game.regions().is_win1(s.index() * nq + q);
            for p in 0..nq {
                let v = graph.push_vertex(
                    arena.owner(s),
                    arena.successors(s).iter().map(|&(action, t)| {
                        let q2 = dfa.step(q, arena.label(Labeling::True, t));
                        let p2 = dfa.step(p, arena.label(Labeling::Perceived, t));
                        Edge {
                            action,
                            target: (t.index() * nq + q2) * nq + p2,
                        }
                    }),
                );
                if winning {
                    target.insert(v);
                }
            }
        }
    }
    let s0 = arena.initial();
    let q0 = dfa.step(dfa.initial(), arena.label(Labeling::True, s0));
    let p0 = dfa.step(dfa.initial(), arena.label(Labeling::Perceived, s0));
    let initial = (s0.index() * nq + q0) * nq + p0;
    let reachable = graph.reachable_from(initial);
    Ok(Hts {
        graph,
        num_q: nq,
        initial,
        target,
        reachable,
    })
}

/// Subjectively rationalizable actions of `player` at the perceived product
/// state `(s, p)`: the actions that stay in the player's perceived winning
/// region when `(s, p)` lies in it, every enabled action otherwise.
pub fn sr_actions(
    perceived: &PerceptualGame,
    s: StateId,
    p: usize,
    player: Player,
) -> Result<Vec<ActionId>, HypergameError> {
    let product = perceived.product();
    if s.index() * product.num_q() >= product.num_vertices() || p >= product.num_q() {
        return Err(HypergameError::UnknownState { s: s.0, q: p });
    }
    let v = product.index(s, p);
    let owner = product.graph().owner(v);
    if owner != player {
        return Err(HypergameError::NotOwner {
            state: s.0,
            owner,
            player,
        });
    }
    let regions = perceived.regions();
    let out = product.graph().successors(v);
    if regions.winner(v) == player {
        Ok(out
            .iter()
            .filter(|e| regions.winner(e.target) == player)
            .map(|e| e.action)
            .collect())
    } else {
        Ok(out.iter().map(|e| e.action).collect())
    }
}

/// SR actions of the owning player at every perceived product state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrActionMap {
    num_q: usize,
    owners: Vec<Player>,
    allowed: Vec<Vec<ActionId>>,
}

impl SrActionMap {
    pub fn compute(perceived: &PerceptualGame) -> Result<Self, HypergameError> {
        if perceived.labeling() != Labeling::Perceived {
            return Err(HypergameError::Inconsistent("SR actions come from the perceived game"));
        }
        let product = perceived.product();
        let nq = product.num_q();
        let mut owners = Vec::with_capacity(product.num_vertices());
        let mut allowed = Vec::with_capacity(product.num_vertices());
        for v in 0..product.num_vertices() {
            let (s, p) = product.state(v);
            let owner = product.graph().owner(v);
            owners.push(owner);
            allowed.push(sr_actions(perceived, s, p, owner)?);
        }
        Ok(SrActionMap {
            num_q: nq,
            owners,
            allowed,
        })
    }

    pub fn num_q(&self) -> usize {
        self.num_q
    }

    /// SR actions of `player` at `(s, p)`; `None` if `player` does not move at `s`.
    pub fn actions(&self, s: StateId, p: usize, player: Player) -> Option<&[ActionId]> {
        let v = s.index() * self.num_q + p;
        (self.owners[v] == player).then(|| self.allowed[v].as_slice())
    }

    pub fn allows(&self, s: StateId, p: usize, player: Player, action: ActionId) -> bool {
        self.actions(s, p, player)
            .is_some_and(|acts| acts.binary_search(&action).is_ok())
    }
}

/// An edge of the hypergame transition system that the restricted game drops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RemovedEdge {
    pub from: usize,
    pub action: ActionId,
    pub to: usize,
}

/// The hypergame transition system with non-SR actions removed outside the
/// target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedGame {
    graph: GameGraph,
    num_q: usize,
    initial: usize,
    target: FixedBitSet,
    removed: Vec<RemovedEdge>,
    reachable: FixedBitSet,
}

impl RestrictedGame {
    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn num_q(&self) -> usize {
        self.num_q
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn target(&self) -> &FixedBitSet {
        &self.target
    }

    /// Removed edges, sorted by source vertex then action.
    pub fn removed(&self) -> &[RemovedEdge] {
        &self.removed
    }

    /// Vertices reachable from the initial vertex in the restricted game.
    pub fn reachable(&self) -> &FixedBitSet {
        &self.reachable
    }

    pub fn reachable_count(&self) -> usize {
        self.reachable.count_ones(..)
    }

    pub fn is_removed(&self, from: usize, action: ActionId) -> bool {
        self.removed
            .binary_search_by(|r| (r.from, r.action).cmp(&(from, action)))
            .is_ok()
    }
}

/// Restricts the HTS. Outside the target, a P2 state whose perceived
/// projection is P2-winning keeps only P2's SR actions, and a P1 state whose
/// perceived projection is P1-winning keeps only P1's SR actions; every other
/// state keeps all of its actions.
pub fn build_restricted_game(
    hts: &Hts,
    perceived: &PerceptualGame,
    sr: &SrActionMap,
) -> Result<RestrictedGame, HypergameError> {
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
    let mut graph = GameGraph::new();
    let mut removed = Vec::new();
    for v in 0..hts.num_vertices() {
        let owner = hts.owner(v);
        let st = hts.state(v);
        let restrict = !hts.target().contains(v) && perceived.regions().winner(hts.perceived_index(v)) == owner;
        let mut kept = Vec::new();
        for &e in hts.graph().successors(v) {
            if restrict && !sr.allows(st.s, st.p, owner, e.action) {
                removed.push(RemovedEdge {
                    from: v,
                    action: e.action,
                    to: e.target,
                });
            } else {
                kept.push(e);
            }
        }
        graph.push_vertex(owner, kept);
    }
    let reachable = graph.reachable_from(hts.initial());
    Ok(RestrictedGame {
        graph,
        num_q: nq,
        initial: hts.initial(),
        target: hts.target().clone(),
        removed,
        reachable,
    })
}

/// Result of the deceptive sure-winning solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeceptiveSure {
    /// Vertices that were solved.
    pub scope: FixedBitSet,
    /// Regions over the HTS index space; vertices outside `scope` count as
    /// not winning for P1.
    pub regions: Regions,
    /// P1's stealthy deceptive strategy, defined at P1 vertices of the region
    /// outside the target. Inside the target P1 switches to its true
    /// sure-winning strategy.
    pub strategy: Strategy,
}

impl DeceptiveSure {
    pub fn region(&self) -> &FixedBitSet {
        self.regions.win1()
    }
}

/// Solves the restricted game for P1 reaching the target. Dead ends are lost
/// by the player to move.
pub fn solve_deceptive_sure(rg: &RestrictedGame, scope: Scope) -> Result<DeceptiveSure, HypergameError> {
    let n = rg.graph().num_vertices();
    let keep = match scope {
        Scope::Reachable => rg.reachable().clone(),
        Scope::Full => {
            let mut all = FixedBitSet::with_capacity(n);
            all.insert_range(..);
            all
        }
    };
    let (sub, old_of_new) = rg.graph().induced(&keep);
    let mut sub_target = FixedBitSet::with_capacity(sub.num_vertices());
    for (new, &old) in old_of_new.iter().enumerate() {
        if rg.target().contains(old) {
            sub_target.insert(new);
        }
    }
    let sol = solve_reachability(&sub, &sub_target)?;
    let mut level = alloc::vec![None; n];
    let mut strategy = Strategy::empty(n);
    for (new, &old) in old_of_new.iter().enumerate() {
        level[old] = sol.regions.level(new);
        strategy.set(old, sol.p1.get(new));
    }
    Ok(DeceptiveSure {
        scope: keep,
        regions: Regions::from_levels(level),
        strategy,
    })
}

/// Every stage of the synthesis pipeline for one input.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub arena: Arena,
    pub dfa: Dfa,
    pub true_game: PerceptualGame,
    pub perceived_game: PerceptualGame,
    pub sr: SrActionMap,
    pub hts: Hts,
    pub restricted: RestrictedGame,
}

impl Synthesis {
    pub fn new(arena: &Arena, dfa: Dfa, mode: RegionMode) -> Result<Self, HypergameError> {
        let true_game = solve_perceptual(arena, Labeling::True, &dfa, mode)?;
        let perceived_game = solve_perceptual(arena, Labeling::Perceived, &dfa, mode)?;
        let sr = SrActionMap::compute(&perceived_game)?;
        let hts = build_hts(arena, &dfa, &true_game)?;
        let restricted = build_restricted_game(&hts, &perceived_game, &sr)?;
        Ok(Synthesis {
            arena: arena.clone(),
            dfa,
            true_game,
            perceived_game,
            sr,
            hts,
            restricted,
        })
    }

    pub fn deceptive_sure(&self, scope: Scope) -> Result<DeceptiveSure, HypergameError> {
        solve_deceptive_sure(&self.restricted, scope)
    }

    pub fn hts_index(&self, s: u32, q: usize, p: usize) -> usize {
        self.hts.index(HtsState { s: StateId(s), q, p })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::running_example;
    use crate::speclang::{compile_to_dfa, parse_formula, DEFAULT_STATE_CAP};
    use alloc::vec;

    fn example(mode: RegionMode) -> Synthesis {
        let arena = running_example();
        let dfa = compile_to_dfa(
            &parse_formula("F A", arena.props()).unwrap(),
            arena.props(),
            DEFAULT_STATE_CAP,
        )
        .unwrap();
        Synthesis::new(&arena, dfa, mode).unwrap()
    }

    fn names(arena: &Arena, acts: &[ActionId]) -> Vec<alloc::string::String> {
        acts.iter().map(|&a| arena.action_name(a).into()).collect()
    }

    fn triples(syn: &Synthesis, set: &FixedBitSet) -> Vec<(u32, usize, usize)> {
        set.ones()
            .map(|v| syn.hts.state(v))
            .map(|st| (st.s.0, st.q, st.p))
            .collect()
    }

    #[test]
    fn sr_actions_of_p2() {
        let syn = example(RegionMode::ArenaMarking);
        let a = &syn.arena;
        let at4 = sr_actions(&syn.perceived_game, StateId(4), 0, Player::P2).unwrap();
        assert_eq!(names(a, &at4), ["4->5"]);
        let at1 = sr_actions(&syn.perceived_game, StateId(1), 0, Player::P2).unwrap();
        assert_eq!(names(a, &at1), ["1->0", "1->4"]);
        // Product mode agrees at these states.
        let syn = example(RegionMode::Product);
        let at1 = sr_actions(&syn.perceived_game, StateId(1), 0, Player::P2).unwrap();
        assert_eq!(names(a, &at1), ["1->0", "1->4"]);
    }

    #[test]
    fn sr_actions_outside_own_region_are_unrestricted() {
        let syn = example(RegionMode::ArenaMarking);
        // (5, p0) is not P1-winning in the perceived game.
        let acts = sr_actions(&syn.perceived_game, StateId(5), 0, Player::P1).unwrap();
        assert_eq!(names(&syn.arena, &acts), ["5->4", "5->6"]);
        let err = sr_actions(&syn.perceived_game, StateId(4), 0, Player::P1).unwrap_err();
        assert!(matches!(err, HypergameError::NotOwner { .. }));
        let err = sr_actions(&syn.perceived_game, StateId(9), 0, Player::P1).unwrap_err();
        assert!(matches!(err, HypergameError::UnknownState { .. }));
    }

    #[test]
    fn hts_transitions_track_both_automata() {
        let syn = example(RegionMode::ArenaMarking);
        let a = &syn.arena;
        let v = syn.hts_index(4, 0, 0);
        let w = syn.hts.step(v, a.action_by_name("4->5").unwrap()).unwrap();
        assert_eq!(
            syn.hts.state(w),
            HtsState {
                s: StateId(5),
                q: 1,
                p: 0
            }
        );
        let v = syn.hts_index(1, 0, 0);
        let w = syn.hts.step(v, a.action_by_name("1->2").unwrap()).unwrap();
        assert_eq!(
            syn.hts.state(w),
            HtsState {
                s: StateId(2),
                q: 0,
                p: 1
            }
        );
        assert_eq!(syn.hts.initial(), syn.hts_index(0, 0, 0));
    }

    #[test]
    fn restricted_game_cases() {
        let syn = example(RegionMode::ArenaMarking);
        let a = &syn.arena;
        let rg = &syn.restricted;
        let act = |n: &str| a.action_by_name(n).unwrap();
        let v300 = syn.hts_index(3, 0, 0);
        assert!(rg.is_removed(v300, act("3->4")));
        assert!(!rg.is_removed(v300, act("3->2")));
        let v400 = syn.hts_index(4, 0, 0);
        assert!(rg.is_removed(v400, act("4->3")));
        assert_eq!(rg.graph().successors(v400).len(), 1);
        let v510 = syn.hts_index(5, 1, 0);
        assert_eq!(rg.graph().successors(v510).len(), 2);
        assert_eq!(
            triples(&syn, rg.reachable()),
            vec![
                (0, 0, 0),
                (1, 0, 0),
                (4, 0, 0),
                (4, 1, 0),
                (5, 1, 0),
                (6, 1, 0),
                (7, 1, 0)
            ]
        );
    }

    #[test]
    fn deceptive_sure_region_of_running_example() {
        let syn = example(RegionMode::ArenaMarking);
        let sure = syn.deceptive_sure(Scope::Reachable).unwrap();
        assert_eq!(
            triples(&syn, sure.region()),
            vec![(4, 0, 0), (4, 1, 0), (5, 1, 0), (6, 1, 0), (7, 1, 0)]
        );
        assert!(!sure.region().contains(syn.hts_index(1, 0, 0)));
        // Strategy is undefined inside the target and at P2 states.
        assert!(sure.strategy.iter().all(|(v, _)| !syn.restricted.target().contains(v)));
    }

    #[test]
    fn product_mode_keeps_the_same_non_target_core() {
        let syn = example(RegionMode::Product);
        let sure = syn.deceptive_sure(Scope::Reachable).unwrap();
        let outside: Vec<_> = sure.region().difference(syn.restricted.target()).collect();
        assert_eq!(outside, vec![syn.hts_index(4, 0, 0)]);
        assert!(syn.restricted.target().contains(syn.hts_index(4, 1, 0)));
    }

    #[test]
    fn marking_requires_single_step_objective() {
        let arena = running_example();
        let f = parse_formula("X A", arena.props()).unwrap();
        let dfa = compile_to_dfa(&f, arena.props(), DEFAULT_STATE_CAP).unwrap();
        let err = Synthesis::new(&arena, dfa.clone(), RegionMode::ArenaMarking).unwrap_err();
        assert_eq!(err, HypergameError::MarkingUnsupported);
        let syn = Synthesis::new(&arena, dfa, RegionMode::Auto).unwrap();
        assert!(!syn.true_game.is_marking());
    }

    #[test]
    fn arena_level_regions_in_marking_mode() {
        let syn = example(RegionMode::ArenaMarking);
        let w11: Vec<_> = syn.true_game.arena_solution().unwrap().regions.win1().ones().collect();
        let w12: Vec<_> = syn
            .perceived_game
            .arena_solution()
            .unwrap()
            .regions
            .win1()
            .ones()
            .collect();
        assert_eq!(w11, [5, 6, 7]);
        assert_eq!(w12, [2, 3]);
        assert!(syn.true_game.in_win(Player::P1, StateId(6), 0));
        assert!(!syn.true_game.in_win(Player::P1, StateId(4), 1));
    }

    #[test]
    fn inconsistent_inputs_are_rejected() {
        let syn = example(RegionMode::Product);
        let err = build_hts(&syn.arena, &syn.dfa, &syn.perceived_game).unwrap_err();
        assert!(matches!(err, HypergameError::Inconsistent(_)));
        assert!(SrActionMap::compute(&syn.true_game).is_err());
        let other = compile_to_dfa(
            &parse_formula("X X A", syn.arena.props()).unwrap(),
            syn.arena.props(),
            100,
        )
        .unwrap();
        assert!(build_hts(&syn.arena, &other, &syn.true_game).is_err());
        let bigger = Synthesis::new(&syn.arena, other, RegionMode::Product).unwrap();
        assert!(build_restricted_game(&bigger.hts, &syn.perceived_game, &syn.sr).is_err());
    }
}
