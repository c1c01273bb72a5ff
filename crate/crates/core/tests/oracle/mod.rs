//! Independent reference implementations and random instance generators
//! shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use hypergame_core::{
    Arena, ArenaBuilder, Dfa, Formula, Labeling, Player, Propositions, StateId, StochasticGame, Symbol, VertexKind,
};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> SmallRng {
    SmallRng::seed_from_u64(seed)
}

/// Strong finite-word satisfaction of `f` at position `i` of `w`. Position
/// `w.len()` is the end of the word, where only `true` and formulas that
/// reduce to it hold.
pub fn sat(f: &Formula, w: &[Symbol], i: usize) -> bool {
    let n = w.len();
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(p) => i < n && w[i].contains(*p),
        Formula::NotAtom(p) => i < n && !w[i].contains(*p),
        Formula::And(fs) => fs.iter().all(|g| sat(g, w, i)),
        Formula::Or(fs) => fs.iter().any(|g| sat(g, w, i)),
        Formula::Next(g) => i < n && sat(g, w, i + 1),
        Formula::Until(a, b) => (i..=n).any(|j| sat(b, w, j) && (i..j).all(|k| sat(a, w, k))),
        Formula::Eventually(g) => (i..=n).any(|j| sat(g, w, j)),
    }
}

/// Whether some prefix of `w` is a good prefix of `f`.
pub fn good_prefix(f: &Formula, w: &[Symbol]) -> bool {
    (0..=w.len()).any(|m| sat(f, &w[..m], 0))
}

/// All words over `2^props` of length at most `max_len`.
pub fn words(props: usize, max_len: usize) -> Vec<Vec<Symbol>> {
    let sigma = 1u32 << props;
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..sigma {
                let mut v: Vec<Symbol> = w.clone();
                v.push(Symbol(l));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn random_formula<R: Rng>(rng: &mut R, atoms: u32, depth: usize) -> Formula {
    let leaf = |rng: &mut R| match rng.random_range(0..10) {
        0 => Formula::True,
        1 => Formula::False,
        2..=5 => Formula::Atom(rng.random_range(0..atoms)),
        _ => Formula::NotAtom(rng.random_range(0..atoms)),
    };
    if depth == 0 || rng.random_bool(0.2) {
        return leaf(rng);
    }
    let sub = |rng: &mut R| random_formula(rng, atoms, depth - 1);
    match rng.random_range(0..5) {
        0 => Formula::And(vec![sub(rng), sub(rng)]),
        1 => Formula::Or(vec![sub(rng), sub(rng)]),
        2 => Formula::Next(Box::new(sub(rng))),
        3 => Formula::Until(Box::new(sub(rng)), Box::new(sub(rng))),
        _ => Formula::Eventually(Box::new(sub(rng))),
    }
}

pub fn prop_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// A random arena with `states` states, 1 to `branching` distinct successors
/// per state, and sparse random labels under both labelings.
pub fn random_arena<R: Rng>(rng: &mut R, states: usize, branching: usize, props: &Propositions) -> Arena {
    random_arena_with_density(rng, states, branching, props, 0.25)
}

/// As [`random_arena`], each proposition labeling a state with probability
/// `density` under each labeling.
pub fn random_arena_with_density<R: Rng>(
    rng: &mut R,
    states: usize,
    branching: usize,
    props: &Propositions,
    density: f64,
) -> Arena {
    let mut b = ArenaBuilder::new(props.clone());
    for s in 0..states {
        let owner = if rng.random_bool(0.5) { Player::P1 } else { Player::P2 };
        b.state(format!("s{s}"), owner);
    }
    for s in 0..states {
        let k = rng.random_range(1..=branching.min(states));
        let mut targets = BTreeSet::new();
        while targets.len() < k {
            targets.insert(rng.random_range(0..states));
        }
        for t in targets {
            b.edge(format!("s{s}"), format!("s{t}"), None);
        }
    }
    b.initial("s0");
    for s in 0..states {
        for labeling in [Labeling::True, Labeling::Perceived] {
            let chosen: Vec<&str> = props
                .names()
                .iter()
                .filter(|_| rng.random_bool(density))
                .map(String::as_str)
                .collect();
            if !chosen.is_empty() {
                b.label(labeling, format!("s{s}"), chosen);
            }
        }
    }
    b.build().expect("generated arena is well formed")
}

/// A random total DFA with `1..=max_states` states whose accepting states are
/// absorbing.
pub fn random_dfa<R: Rng>(rng: &mut R, props: &Propositions, max_states: usize) -> Dfa {
    let n = rng.random_range(1..=max_states);
    let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    let accepting: Vec<bool> = (0..n).map(|i| i > 0 && rng.random_bool(0.3)).collect();
    let mut transitions = Vec::new();
    for q in 0..n {
        for l in props.letters() {
            let to = if accepting[q] {
                let acc: Vec<usize> = (0..n).filter(|&i| accepting[i]).collect();
                acc[rng.random_range(0..acc.len())]
            } else {
                rng.random_range(0..n)
            };
            transitions.push((names[q].clone(), l, names[to].clone()));
        }
    }
    let acc: Vec<&str> = (0..n).filter(|&i| accepting[i]).map(|i| names[i].as_str()).collect();
    Dfa::from_parts(props.clone(), names.clone(), "d0", &acc, transitions).expect("generated DFA is valid")
}

/// `(s, q, p)` triples reachable from the initial HTS state, computed directly
/// from the arena and automaton.
pub fn hts_reachable(arena: &Arena, dfa: &Dfa) -> HashSet<(u32, usize, usize)> {
    let s0 = arena.initial();
    let start = (
        s0.0,
        dfa.step(dfa.initial(), arena.label(Labeling::True, s0)),
        dfa.step(dfa.initial(), arena.label(Labeling::Perceived, s0)),
    );
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((s, q, p)) = queue.pop_front() {
        for &(_, t) in arena.successors(StateId(s)) {
            let next = (
                t.0,
                dfa.step(q, arena.label(Labeling::True, t)),
                dfa.step(p, arena.label(Labeling::Perceived, t)),
            );
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Reachability-game winning set by naive fixed-point iteration, without
/// worklists or counters.
pub fn naive_attractor(
    n: usize,
    owner: impl Fn(usize) -> Player,
    succ: impl Fn(usize) -> Vec<usize>,
    target: impl Fn(usize) -> bool,
) -> Vec<bool> {
    let mut win: Vec<bool> = (0..n).map(&target).collect();
    loop {
        let mut changed = false;
        for v in 0..n {
            if win[v] {
                continue;
            }
            let out = succ(v);
            let joins = match owner(v) {
                Player::P1 => out.iter().any(|&w| win[w]),
                Player::P2 => out.iter().all(|&w| win[w]),
            };
            if joins {
                win[v] = true;
                changed = true;
            }
        }
        if !changed {
            return win;
        }
    }
}

/// Number of pure memoryless P1 strategies on the choice vertices of the
/// scope, saturating.
pub fn strategy_count(g: &StochasticGame) -> u64 {
    g.scope()
        .ones()
        .filter(|&v| g.kind(v) == VertexKind::Choice)
        .fold(1u64, |acc, v| acc.saturating_mul(g.edges(v).len().max(1) as u64))
}

/// Almost-sure winning region by enumerating every pure memoryless P1
/// strategy: a vertex wins under a strategy when the target stays reachable
/// from every vertex reachable from it in the induced support graph.
pub fn asw_by_enumeration(g: &StochasticGame) -> BTreeSet<usize> {
    let scope: Vec<usize> = g.scope().ones().collect();
    let choice: Vec<usize> = scope
        .iter()
        .copied()
        .filter(|&v| g.kind(v) == VertexKind::Choice)
        .collect();
    let mut pick = vec![0usize; choice.len()];
    let mut region = BTreeSet::new();
    loop {
        let succ = |v: usize| -> Vec<usize> {
            match g.kind(v) {
                VertexKind::Sink => Vec::new(),
                VertexKind::Probabilistic => g.edges(v).iter().map(|e| e.target).collect(),
                VertexKind::Choice => {
                    let i = choice.binary_search(&v).unwrap();
                    g.edges(v).get(pick[i]).map(|e| e.target).into_iter().collect()
                }
            }
        };
        // Vertices that can reach the target.
        let mut can_reach: HashSet<usize> = scope
            .iter()
            .copied()
            .filter(|&v| g.kind(v) == VertexKind::Sink)
            .collect();
        loop {
            let before = can_reach.len();
            for &v in &scope {
                if !can_reach.contains(&v) && succ(v).iter().any(|w| can_reach.contains(w)) {
                    can_reach.insert(v);
                }
            }
            if can_reach.len() == before {
                break;
            }
        }
        for &v in &scope {
            let mut seen = HashSet::from([v]);
            let mut stack = vec![v];
            let mut ok = true;
            while let Some(u) = stack.pop() {
                if !can_reach.contains(&u) {
                    ok = false;
                    break;
                }
                for w in succ(u) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            if ok {
                region.insert(v);
            }
        }
        // Next strategy in mixed-radix order.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return region;
            }
            pick[i] += 1;
            if pick[i] < g.edges(choice[i]).len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// A copy of `arena` whose perceived labeling equals its true labeling.
pub fn without_misperception(arena: &Arena) -> Arena {
    let props = arena.props();
    let mut b = ArenaBuilder::new(props.clone());
    for s in arena.states() {
        b.state(arena.state_name(s), arena.owner(s));
    }
    for (s, a, t) in arena.edges() {
        b.edge(arena.state_name(s), arena.state_name(t), Some(arena.action_name(a)));
    }
    b.initial(arena.state_name(arena.initial()));
    for s in arena.states() {
        let names = props.symbol_names(arena.label(Labeling::True, s));
        if !names.is_empty() {
            b.label(Labeling::True, arena.state_name(s), names.clone());
            b.label(Labeling::Perceived, arena.state_name(s), names);
        }
    }
    b.build().expect("copy of a valid arena is valid")
}
