use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use super::progression::{holds_at_end, normalize, progress};
use super::{Formula, Propositions, SpecError, Symbol};

/// Default bound on the number of automaton states produced by
/// [`compile_to_dfa`].
pub const DEFAULT_STATE_CAP: usize = 10_000;

/// A deterministic finite automaton over the alphabet `2^AP` with a total
/// transition function and absorbing accepting states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    props: Propositions,
    names: Vec<String>,
    /// `delta[q * alphabet_size + letter]`
    delta: Vec<u32>,
    initial: usize,
    accepting: FixedBitSet,
}

impl Dfa {
    /// Builds an automaton from explicit parts, checking totality,
    /// determinism and absorption of the accepting set.
    pub fn from_parts<I>(
        props: Propositions,
        names: Vec<String>,
        initial: &str,
        accepting: &[&str],
        transitions: I,
    ) -> Result<Dfa, SpecError>
    where
        I: IntoIterator<Item = (String, Symbol, String)>,
    {
        if names.is_empty() {
            return Err(SpecError::EmptyDfa);
        }
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(SpecError::DuplicateDfaState(n.clone()));
            }
        }
        let lookup = |n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| SpecError::UnknownDfaState(n.into()))
        };
        let initial = lookup(initial)?;
        let mut acc = FixedBitSet::with_capacity(names.len());
        for a in accepting {
            acc.insert(lookup(a)?);
        }
        let sigma = props.alphabet_size();
        let mut delta = vec![u32::MAX; names.len() * sigma];
        for (from, letter, to) in transitions {
            let f = lookup(&from)?;
            let t = lookup(&to)?;
            if !props.contains_symbol(letter) {
                return Err(SpecError::LetterOutOfAlphabet {
                    letter: letter.0,
                    props: props.len(),
                });
            }
            let slot = &mut delta[f * sigma + letter.0 as usize];
            if *slot != u32::MAX && *slot != t as u32 {
                return Err(SpecError::ConflictingTransition {
                    state: from,
                    letter: letter.0,
                });
            }
            *slot = t as u32;
        }
        for q in 0..names.len() {
            for letter in 0..sigma {
                let to = delta[q * sigma + letter];
                if to == u32::MAX {
                    return Err(SpecError::MissingTransition {
                        state: names[q].clone(),
                        letter: letter as u32,
                    });
                }
                if acc.contains(q) && !acc.contains(to as usize) {
                    return Err(SpecError::NonAbsorbingAccepting {
                        state: names[q].clone(),
                        letter: letter as u32,
                    });
                }
            }
        }
        Ok(Dfa {
            props,
            names,
            delta,
            initial,
            accepting: acc,
        })
    }

    pub fn props(&self) -> &Propositions {
        &self.props
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(q)
    }

    pub fn accepting(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting.ones()
    }

    /// The successor of `q` on `letter`. Panics if `letter` is outside the alphabet.
    pub fn step(&self, q: usize, letter: Symbol) -> usize {
        let sigma = self.props.alphabet_size();
        assert!((letter.0 as usize) < sigma, "letter {letter} outside the alphabet");
        self.delta[q * sigma + letter.0 as usize] as usize
    }

    /// All transitions `(from, letter, to)` in state-then-letter order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        let sigma = self.props.alphabet_size();
        self.delta
            .iter()
            .enumerate()
            .map(move |(i, &to)| (i / sigma, Symbol((i % sigma) as u32), to as usize))
    }

    /// True when the initial state is not accepting and every letter either
    /// keeps the automaton in its initial state or moves it straight into an
    /// accepting state, as for `F p` with `p` propositional. Such objectives can
    /// be solved on the arena by marking the states whose label is accepted.
    pub fn is_single_step_reach(&self) -> bool {
        !self.is_accepting(self.initial)
            && self.props.letters().all(|l| {
                let to = self.step(self.initial, l);
                to == self.initial || self.is_accepting(to)
            })
    }
}

/// Whether some prefix of `word` drives the automaton into an accepting state.
pub fn accepts(dfa: &Dfa, word: &[Symbol]) -> Result<bool, SpecError> {
    if let Some(bad) = word.iter().find(|l| !dfa.props.contains_symbol(**l)) {
        return Err(SpecError::LetterOutOfAlphabet {
            letter: bad.0,
            props: dfa.props.len(),
        });
    }
    let mut q = dfa.initial;
    for &letter in word {
        if dfa.is_accepting(q) {
            return Ok(true);
        }
        q = dfa.step(q, letter);
    }
    Ok(dfa.is_accepting(q))
}

/// Compiles a co-safe formula into a DFA whose accepting runs are exactly the
/// words with an informative good prefix.
///
/// States are canonical residual formulas explored breadth-first from the
/// normalized input, so state `q0` is always initial. A residual that already
/// holds at end-of-word is replaced by `true`, which makes acceptance absorbing.
/// `false`, when reachable, is the rejecting sink.
pub fn compile_to_dfa(formula: &Formula, props: &Propositions, cap: usize) -> Result<Dfa, SpecError> {
    if let Some(i) = formula.max_atom() {
        if i as usize >= props.len() {
            return Err(SpecError::AtomOutOfAlphabet(i));
        }
    }
    let canonical = |f: &Formula| {
        let r = normalize(f);
        if holds_at_end(&r) {
            Formula::True
        } else {
            r
        }
    };

    let sigma = props.alphabet_size();
    let mut ids: BTreeMap<Formula, usize> = BTreeMap::new();
    let mut residuals: Vec<Formula> = Vec::new();
    let mut queue = VecDeque::new();
    let mut delta: Vec<u32> = Vec::new();

    let start = canonical(formula);
    ids.insert(start.clone(), 0);
    residuals.push(start);
    queue.push_back(0usize);

    while let Some(q) = queue.pop_front() {
        let current = residuals[q].clone();
        let row_start = delta.len();
        debug_assert_eq!(row_start, q * sigma);
        for letter in props.letters() {
            let next = canonical(&progress(&current, letter));
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = residuals.len();
                    if id >= cap {
                        return Err(SpecError::StateCapExceeded { cap });
                    }
                    ids.insert(next.clone(), id);
                    residuals.push(next);
                    queue.push_back(id);
                    id
                }
            };
            delta.push(id as u32);
        }
    }

    let mut accepting = FixedBitSet::with_capacity(residuals.len());
    for (q, r) in residuals.iter().enumerate() {
        if *r == Formula::True {
            accepting.insert(q);
        }
    }
    Ok(Dfa {
        props: props.clone(),
        names: (0..residuals.len()).map(|q| format!("q{q}")).collect(),
        delta,
        initial: 0,
        accepting,
    })
}
