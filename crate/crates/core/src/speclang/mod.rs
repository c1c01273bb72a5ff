//! Co-safe temporal-logic objectives: parsing, compilation to DFAs and acceptance.

mod dfa;
mod formula;
mod parser;
mod progression;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use dfa::{accepts, compile_to_dfa, Dfa, DEFAULT_STATE_CAP};
pub use formula::Formula;
pub use parser::parse_formula;
pub use progression::{holds_at_end, normalize, progress};

/// Largest supported proposition set. The alphabet has `2^n` letters and
/// DFA transition tables are stored densely.
pub const MAX_PROPOSITIONS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("syntax error at {position}: found {found}, expected one of {expected:?}")]
    Syntax {
        position: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("undeclared atomic proposition `{name}` at {position}")]
    UndeclaredAtom { name: String, position: usize },
    #[error("negation at {position} must be applied to an atomic proposition")]
    NegatedNonAtom { position: usize },
    #[error("duplicate atomic proposition `{0}`")]
    DuplicateProposition(String),
    #[error("{count} atomic propositions exceed the supported maximum of {max}")]
    TooManyPropositions { count: usize, max: usize },
    #[error("automaton exceeds the state cap of {cap}")]
    StateCapExceeded { cap: usize },
    #[error("letter {letter:#b} is not a subset of the {props} declared propositions")]
    LetterOutOfAlphabet { letter: u32, props: usize },
    #[error("formula refers to proposition index {0} outside the alphabet")]
    AtomOutOfAlphabet(u32),
    #[error("unknown automaton state `{0}`")]
    UnknownDfaState(String),
    #[error("duplicate automaton state `{0}`")]
    DuplicateDfaState(String),
    #[error("automaton has no states")]
    EmptyDfa,
    #[error("missing transition from `{state}` on letter {letter:#b}")]
    MissingTransition { state: String, letter: u32 },
    #[error("conflicting transitions from `{state}` on letter {letter:#b}")]
    ConflictingTransition { state: String, letter: u32 },
    #[error("accepting state `{state}` leaves the accepting set on letter {letter:#b}")]
    NonAbsorbingAccepting { state: String, letter: u32 },
}

/// The declared atomic propositions `AP`, in a fixed order. The position of a
/// proposition is its bit in a [`Symbol`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Propositions {
    names: Vec<String>,
}

impl Propositions {
    pub fn new<I, S>(names: I) -> Result<Self, SpecError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if out.contains(&name) {
                return Err(SpecError::DuplicateProposition(name));
            }
            out.push(name);
        }
        if out.len() > MAX_PROPOSITIONS {
            return Err(SpecError::TooManyPropositions {
                count: out.len(),
                max: MAX_PROPOSITIONS,
            });
        }
        Ok(Propositions { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn name(&self, index: u32) -> &str {
        &self.names[index as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Number of letters in the alphabet `2^AP`.
    pub fn alphabet_size(&self) -> usize {
        1usize << self.names.len()
    }

    /// Every letter of the alphabet, in increasing bit order.
    pub fn letters(&self) -> impl Iterator<Item = Symbol> {
        (0..self.alphabet_size() as u32).map(Symbol)
    }

    /// Builds a letter from proposition names.
    pub fn symbol<'a, I>(&self, props: I) -> Option<Symbol>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0u32;
        for p in props {
            bits |= 1 << self.index_of(p)?;
        }
        Some(Symbol(bits))
    }

    pub fn contains_symbol(&self, symbol: Symbol) -> bool {
        (symbol.0 as usize) < self.alphabet_size()
    }

    pub fn symbol_names(&self, symbol: Symbol) -> Vec<&str> {
        (0..self.names.len() as u32)
            .filter(|&i| symbol.contains(i))
            .map(|i| self.name(i))
            .collect()
    }
}

/// A letter of `2^AP`: the set of propositions that hold, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Symbol(pub u32);

impl Symbol {
    pub const EMPTY: Symbol = Symbol(0);

    pub fn contains(self, prop: u32) -> bool {
        self.0 & (1 << prop) != 0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}
