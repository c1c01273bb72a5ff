mod oracle;

use std::collections::BTreeSet;

use hypergame_core::arena::running_example;
use hypergame_core::{
    compile_to_dfa, parse_formula, verify_sure, Arena, Dfa, FixedBitSet, Labeling, Player, Propositions, RegionMode,
    Scope, StateId, Synthesis, DEFAULT_STATE_CAP,
};
use rand::Rng;

fn eventually_a(arena: &Arena) -> Dfa {
    compile_to_dfa(
        &parse_formula("F A", arena.props()).unwrap(),
        arena.props(),
        DEFAULT_STATE_CAP,
    )
    .unwrap()
}

fn random_instance(seed: u64, max_states: usize) -> (Arena, Dfa) {
    let mut rng = oracle::rng(seed);
    let props = Propositions::new(oracle::prop_names(rng.random_range(1..=2))).unwrap();
    let n = rng.random_range(1..=max_states);
    let arena = oracle::random_arena(&mut rng, n, 3, &props);
    let dfa = oracle::random_dfa(&mut rng, &props, 4);
    (arena, dfa)
}

fn triples(syn: &Synthesis, set: &FixedBitSet) -> BTreeSet<(u32, usize, usize)> {
    set.ones()
        .map(|v| {
            let st = syn.hts.state(v);
            (st.s.0, st.q, st.p)
        })
        .collect()
}

#[test]
fn unrestricted_reachable_fragment_of_running_example() {
    let arena = running_example();
    let dfa = eventually_a(&arena);
    let syn = Synthesis::new(&arena, dfa.clone(), RegionMode::Auto).unwrap();
    let expected = oracle::hts_reachable(&arena, &dfa);
    let got = triples(&syn, syn.hts.reachable());
    assert_eq!(got, expected.into_iter().collect());
    assert_eq!(got.len(), 22);
}

#[test]
fn reachable_fragment_matches_oracle_on_random_instances() {
    for seed in 0..100 {
        let (arena, dfa) = random_instance(seed, 30);
        let syn = Synthesis::new(&arena, dfa.clone(), RegionMode::Product).unwrap();
        let got = triples(&syn, syn.hts.reachable());
        assert_eq!(
            got,
            oracle::hts_reachable(&arena, &dfa).into_iter().collect(),
            "seed {seed}"
        );
    }
}

#[test]
fn hts_edges_project_onto_both_products() {
    for seed in 0..60 {
        let (arena, dfa) = random_instance(seed, 20);
        let syn = Synthesis::new(&arena, dfa, RegionMode::Product).unwrap();
        let l1 = syn.true_game.product();
        let l2 = syn.perceived_game.product();
        for v in 0..syn.hts.num_vertices() {
            let st = syn.hts.state(v);
            for e in syn.hts.graph().successors(v) {
                let t = syn.hts.state(e.target);
                assert_eq!(l1.step(l1.index(st.s, st.q), e.action), Some(l1.index(t.s, t.q)));
                assert_eq!(l2.step(l2.index(st.s, st.p), e.action), Some(l2.index(t.s, t.p)));
            }
            let in_target = syn.hts.target().contains(v);
            assert_eq!(in_target, syn.true_game.regions().is_win1(l1.index(st.s, st.q)));
        }
    }
}

#[test]
fn removed_edges_leave_the_movers_perceived_region() {
    for seed in 0..100 {
        let (arena, dfa) = random_instance(seed, 25);
        let syn = Synthesis::new(&arena, dfa, RegionMode::Product).unwrap();
        let l2 = syn.perceived_game.product();
        let r2 = syn.perceived_game.regions();
        for r in syn.restricted.removed() {
            let st = syn.hts.state(r.from);
            let owner = syn.hts.owner(r.from);
            assert!(!syn.hts.target().contains(r.from));
            assert_eq!(r2.winner(l2.index(st.s, st.p)), owner);
            let next = l2.step(l2.index(st.s, st.p), r.action).unwrap();
            assert_ne!(r2.winner(next), owner, "seed {seed}");
        }
        // Restricted vertices keep at least one action.
        for v in 0..syn.restricted.graph().num_vertices() {
            assert!(!syn.restricted.graph().successors(v).is_empty());
        }
    }
}

#[test]
fn target_is_inside_the_sure_region_and_verified() {
    for seed in 0..80 {
        let (arena, dfa) = random_instance(seed, 15);
        for mode in [RegionMode::Product, RegionMode::Auto] {
            let syn = Synthesis::new(&arena, dfa.clone(), mode).unwrap();
            for scope in [Scope::Reachable, Scope::Full] {
                let sure = syn.deceptive_sure(scope).unwrap();
                let mut t = syn.restricted.target().clone();
                t.intersect_with(&sure.scope);
                assert!(t.is_subset(sure.region()), "seed {seed}");
                assert!(sure.region().is_subset(&sure.scope));
            }
            let sure = syn.deceptive_sure(Scope::Full).unwrap();
            let strat = sure.strategy.completed(syn.restricted.graph(), Player::P1);
            let n = syn.restricted.graph().num_vertices();
            for v in 0..n {
                let report = verify_sure(&syn.restricted, &strat, v, n).unwrap();
                assert_eq!(report.verified, sure.region().contains(v), "seed {seed} vertex {v}");
            }
        }
    }
}

#[test]
fn no_misperception_collapses_to_the_true_game() {
    for seed in 0..80 {
        let (arena, dfa) = random_instance(seed, 20);
        let arena = oracle::without_misperception(&arena);
        let syn = Synthesis::new(&arena, dfa, RegionMode::Product).unwrap();
        let sure = syn.deceptive_sure(Scope::Full).unwrap();
        let l1 = syn.true_game.product();
        for s in arena.states() {
            for q in 0..syn.hts.num_q() {
                let v = syn.hts_index(s.0, q, q);
                assert_eq!(
                    sure.region().contains(v),
                    syn.true_game.regions().is_win1(l1.index(s, q)),
                    "seed {seed} state ({}, {q}, {q})",
                    s.0
                );
            }
        }
    }
}

#[test]
fn stealth_holds_along_every_play_of_the_running_example() {
    let arena = running_example();
    let syn = Synthesis::new(&arena, eventually_a(&arena), RegionMode::Auto).unwrap();
    let sure = syn.deceptive_sure(Scope::Reachable).unwrap();
    let g = syn.restricted.graph();
    for start in sure.region().ones() {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if syn.restricted.target().contains(v) {
                continue;
            }
            let moves: Vec<_> = match g.owner(v) {
                Player::P1 => {
                    let a = sure.strategy.get(v).unwrap();
                    let st = syn.hts.state(v);
                    assert!(syn.sr.allows(st.s, st.p, Player::P1, a));
                    vec![g.successor(v, a).unwrap()]
                }
                Player::P2 => g.successors(v).iter().map(|e| e.target).collect(),
            };
            for w in moves {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
}

#[test]
fn deception_gains_state_four() {
    let arena = running_example();
    let syn = Synthesis::new(&arena, eventually_a(&arena), RegionMode::Auto).unwrap();
    let sure = syn.deceptive_sure(Scope::Reachable).unwrap();
    let deceptive: BTreeSet<u32> = sure.region().ones().map(|v| syn.hts.state(v).s.0).collect();
    let honest: BTreeSet<u32> = arena
        .states()
        .filter(|&s| syn.true_game.in_win(Player::P1, s, 0))
        .map(|s| s.0)
        .collect();
    assert_eq!(honest, BTreeSet::from([5, 6, 7]));
    assert_eq!(deceptive, BTreeSet::from([4, 5, 6, 7]));
    assert!(honest.is_subset(&deceptive));
}

#[test]
fn perceived_regions_of_running_example() {
    let arena = running_example();
    let syn = Synthesis::new(&arena, eventually_a(&arena), RegionMode::Auto).unwrap();
    let win = |labeling: Labeling, player: Player| -> Vec<u32> {
        let game = if labeling == Labeling::True {
            &syn.true_game
        } else {
            &syn.perceived_game
        };
        arena
            .states()
            .filter(|&s| game.in_win(player, s, 0))
            .map(|s: StateId| s.0)
            .collect()
    };
    assert_eq!(win(Labeling::True, Player::P1), [5, 6, 7]);
    assert_eq!(win(Labeling::True, Player::P2), [0, 1, 2, 3, 4]);
    assert_eq!(win(Labeling::Perceived, Player::P1), [2, 3]);
    assert_eq!(win(Labeling::Perceived, Player::P2), [0, 1, 4, 5, 6, 7]);
}
