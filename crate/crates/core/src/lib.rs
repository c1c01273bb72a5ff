//! Synthesis of stealthy deceptive strategies in turn-based games on graphs.
//!
//! Player 1 knows the true labeling of the arena while player 2 plays against a
//! misperceived labeling. Given a co-safe temporal-logic objective for player 1,
//! this crate computes
//!
//! * the winning regions of both perceptual games ([`hypergame::solve_perceptual`]),
//! * the hypergame transition system and the subjectively rationalizable actions
//!   of each player ([`hypergame::Hts`], [`hypergame::SrActionMap`]),
//! * stealthy deceptive sure-winning regions and strategies
//!   ([`hypergame::solve_deceptive_sure`]),
//! * stealthy deceptive almost-sure-winning regions and strategies
//!   ([`almostsure::solve_asw`]),
//!
//! and validates the results by exhaustive verification and seeded simulation
//! ([`simulate`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod almostsure;
pub mod arena;
pub mod graph;
pub mod hypergame;
pub mod product;
pub mod reachsolver;
pub mod simulate;
pub mod speclang;

pub use fixedbitset::FixedBitSet;

pub use almostsure::{build_stochastic_game, pre_step, solve_asw, AswResult, StochasticGame, VertexKind};
pub use arena::{ActionId, Arena, ArenaBuilder, ArenaError, HypergameInput, Labeling, Objective, Player, StateId};
pub use graph::{Edge, GameGraph};
pub use hypergame::{
    build_hts, build_restricted_game, solve_deceptive_sure, solve_perceptual, sr_actions, DeceptiveSure, Hts, HtsState,
    HypergameError, PerceptualGame, RegionMode, RestrictedGame, Scope, SrActionMap, Synthesis,
};
pub use product::{ProductError, ProductGame};
pub use reachsolver::{solve_reachability, ReachSolution, Regions, SolveError, Strategy};
pub use simulate::{
    audit_stealth, simulate_asw, simulate_trial, trial_rng, verify_sure, P2Distribution, SimError, SimulationConfig,
    SimulationStats, Trace, TraceEnd, VerificationReport,
};
pub use speclang::{
    accepts, compile_to_dfa, parse_formula, Dfa, Formula, Propositions, SpecError, Symbol, DEFAULT_STATE_CAP,
};
