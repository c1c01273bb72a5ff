//! Turn-based deterministic arenas carrying a true and a perceived labeling.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::speclang::{compile_to_dfa, Dfa, Formula, Propositions, SpecError, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Player::P1 => 1,
            Player::P2 => 2,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.number())
    }
}

/// Index of an arena state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of an action name. Ids are assigned in lexicographic order of the
/// names, so comparing ids compares names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(pub u32);

/// Which labeling a product is built over: the true labeling known to P1
/// or the labeling perceived by P2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Labeling {
    True,
    Perceived,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArenaError {
    #[error("arena has no states")]
    Empty,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("no initial state given")]
    MissingInitial,
    #[error("action `{action}` appears twice at state `{state}`")]
    Nondeterministic { state: String, action: String },
    #[error("state `{0}` has no enabled action")]
    NoEnabledAction(String),
    #[error("label of state `{state}` uses undeclared proposition `{prop}`")]
    UndeclaredProposition { state: String, prop: String },
    #[error("action `{0}` is used at states of both players")]
    SharedAction(String),
    #[error("objective automaton alphabet differs from the arena's propositions")]
    AlphabetMismatch,
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    props: Propositions,
    names: Vec<String>,
    owners: Vec<Player>,
    actions: Vec<String>,
    /// Per-state outgoing edges, sorted by action.
    offsets: Vec<usize>,
    edges: Vec<(ActionId, StateId)>,
    initial: StateId,
    labels: [Vec<Symbol>; 2],
}

impl Arena {
    pub fn props(&self) -> &Propositions {
        &self.props
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.names.len() as u32).map(StateId)
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.names[s.index()]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name).map(|i| StateId(i as u32))
    }

    pub fn owner(&self, s: StateId) -> Player {
        self.owners[s.index()]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.actions[a.0 as usize]
    }

    pub fn action_by_name(&self, name: &str) -> Option<ActionId> {
        self.actions
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| ActionId(i as u32))
    }

    /// Outgoing `(action, successor)` pairs of `s`, sorted by action.
    pub fn successors(&self, s: StateId) -> &[(ActionId, StateId)] {
        &self.edges[self.offsets[s.index()]..self.offsets[s.index() + 1]]
    }

    /// Actions enabled at `s`, in lexicographic order.
    pub fn enabled_actions(&self, s: StateId) -> Result<Vec<ActionId>, ArenaError> {
        if s.index() >= self.num_states() {
            return Err(ArenaError::UnknownState(alloc::format!("#{}", s.0)));
        }
        Ok(self.successors(s).iter().map(|&(a, _)| a).collect())
    }

    pub fn transition(&self, s: StateId, a: ActionId) -> Option<StateId> {
        let succ = self.successors(s);
        succ.binary_search_by_key(&a, |&(b, _)| b).ok().map(|i| succ[i].1)
    }

    pub fn label(&self, labeling: Labeling, s: StateId) -> Symbol {
        self.labels[labeling as usize][s.index()]
    }

    /// All edges as `(from, action, to)`, grouped by source state.
    pub fn edges(&self) -> impl Iterator<Item = (StateId, ActionId, StateId)> + '_ {
        self.states()
            .flat_map(move |s| self.successors(s).iter().map(move |&(a, t)| (s, a, t)))
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
}

/// Incremental, name-based arena construction. All validation happens in
/// [`ArenaBuilder::build`].
#[derive(Debug, Clone)]
pub struct ArenaBuilder {
    props: Propositions,
    states: Vec<(String, Player)>,
    edges: Vec<(String, String, Option<String>)>,
    initial: Option<String>,
    labels: Vec<(Labeling, String, Vec<String>)>,
}

impl ArenaBuilder {
    pub fn new(props: Propositions) -> Self {
        ArenaBuilder {
            props,
            states: Vec::new(),
            edges: Vec::new(),
            initial: None,
            labels: Vec::new(),
        }
    }

    pub fn state(&mut self, name: impl Into<String>, owner: Player) -> &mut Self {
        self.states.push((name.into(), owner));
        self
    }

    /// Adds an edge. Without an explicit action name the action is called
    /// `"from->to"`.
    pub fn edge(&mut self, from: impl Into<String>, to: impl Into<String>, action: Option<&str>) -> &mut Self {
        self.edges.push((from.into(), to.into(), action.map(String::from)));
        self
    }

    pub fn initial(&mut self, name: impl Into<String>) -> &mut Self {
        self.initial = Some(name.into());
        self
    }

    pub fn label<I, S>(&mut self, labeling: Labeling, state: impl Into<String>, props: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.labels
            .push((labeling, state.into(), props.into_iter().map(Into::into).collect()));
        self
    }

    pub fn build(&self) -> Result<Arena, ArenaError> {
        if self.states.is_empty() {
            return Err(ArenaError::Empty);
        }
        let mut index: BTreeMap<&str, u32> = BTreeMap::new();
        for (i, (name, _)) in self.states.iter().enumerate() {
            if index.insert(name.as_str(), i as u32).is_some() {
                return Err(ArenaError::DuplicateState(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .map(|&i| StateId(i))
                .ok_or_else(|| ArenaError::UnknownState(name.into()))
        };
        let initial = lookup(self.initial.as_deref().ok_or(ArenaError::MissingInitial)?)?;

        let mut resolved = Vec::with_capacity(self.edges.len());
        for (from, to, action) in &self.edges {
            let f = lookup(from)?;
            let t = lookup(to)?;
            let name = match action {
                Some(a) => a.clone(),
                None => alloc::format!("{from}->{to}"),
            };
            resolved.push((f, name, t));
        }

        let mut owner_of_action: BTreeMap<&str, Player> = BTreeMap::new();
        for (f, name, _) in &resolved {
            let owner = self.states[f.index()].1;
            if *owner_of_action.entry(name.as_str()).or_insert(owner) != owner {
                return Err(ArenaError::SharedAction(name.clone()));
            }
        }
        let actions: Vec<String> = owner_of_action.keys().map(|s| String::from(*s)).collect();
        let action_id = |name: &str| ActionId(actions.binary_search_by(|n| n.as_str().cmp(name)).unwrap() as u32);

        let n = self.states.len();
        let mut per_state: Vec<Vec<(ActionId, StateId)>> = alloc::vec![Vec::new(); n];
        for (f, name, t) in &resolved {
            per_state[f.index()].push((action_id(name), *t));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut edges = Vec::with_capacity(resolved.len());
        offsets.push(0);
        for (s, mut out) in per_state.into_iter().enumerate() {
            out.sort_by_key(|&(a, _)| a);
            if out.is_empty() {
                return Err(ArenaError::NoEnabledAction(self.states[s].0.clone()));
            }
            if let Some(w) = out.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(ArenaError::Nondeterministic {
                    state: self.states[s].0.clone(),
                    action: actions[w[0].0 .0 as usize].clone(),
                });
            }
            edges.extend(out);
            offsets.push(edges.len());
        }

        let mut labels = [alloc::vec![Symbol::EMPTY; n], alloc::vec![Symbol::EMPTY; n]];
        for (labeling, state, props) in &self.labels {
            let s = lookup(state)?;
            let mut bits = 0u32;
            for p in props {
                let i = self
                    .props
                    .index_of(p)
                    .ok_or_else(|| ArenaError::UndeclaredProposition {
                        state: state.clone(),
                        prop: p.clone(),
                    })?;
                bits |= 1 << i;
            }
            labels[*labeling as usize][s.index()] = Symbol(bits);
        }

        Ok(Arena {
            props: self.props.clone(),
            names: self.states.iter().map(|(n, _)| n.clone()).collect(),
            owners: self.states.iter().map(|(_, o)| *o).collect(),
            actions,
            offsets,
            edges,
            initial,
            labels,
        })
    }
}

/// P1's objective, either as a formula or as an explicitly given automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Objective {
    Formula(Formula),
    Dfa(Dfa),
}

/// An arena together with P1's objective. This fully determines the level-2
/// hypergame: both perceptual games share states, actions, transitions, the
/// initial state and the objective, and differ only in the labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergameInput {
    pub arena: Arena,
    pub objective: Objective,
}

impl HypergameInput {
    pub fn new(arena: Arena, objective: Objective) -> Result<Self, ArenaError> {
        match &objective {
            Objective::Formula(f) => {
                if let Some(i) = f.max_atom() {
                    if i as usize >= arena.props().len() {
                        return Err(SpecError::AtomOutOfAlphabet(i).into());
                    }
                }
            }
            Objective::Dfa(d) => {
                if d.props() != arena.props() {
                    return Err(ArenaError::AlphabetMismatch);
                }
            }
        }
        Ok(HypergameInput { arena, objective })
    }

    /// The objective automaton, compiling the formula if needed.
    pub fn dfa(&self, state_cap: usize) -> Result<Dfa, SpecError> {
        match &self.objective {
            Objective::Formula(f) => compile_to_dfa(f, self.arena.props(), state_cap),
            Objective::Dfa(d) => Ok(d.clone()),
        }
    }
}

/// States, players and edges (source, target) of the running example: eight
/// states, P1 owns 0, 2, 3, 5, 6. `L1(5) = {A}`, `L2(2) = {A}`.
pub fn running_example() -> Arena {
    const P1_STATES: [u32; 5] = [0, 2, 3, 5, 6];
    const EDGES: [(u32, u32); 15] = [
        (0, 1),
        (1, 0),
        (1, 2),
        (1, 4),
        (2, 1),
        (3, 2),
        (3, 4),
        (4, 3),
        (4, 5),
        (5, 4),
        (5, 6),
        (6, 5),
        (6, 7),
        (7, 6),
        (7, 5),
    ];
    let mut b = ArenaBuilder::new(Propositions::new(["A"]).unwrap());
    for s in 0..8u32 {
        let owner = if P1_STATES.contains(&s) { Player::P1 } else { Player::P2 };
        b.state(alloc::format!("{s}"), owner);
    }
    for (f, t) in EDGES {
        b.edge(alloc::format!("{f}"), alloc::format!("{t}"), None);
    }
    b.initial("0")
        .label(Labeling::True, "5", ["A"])
        .label(Labeling::Perceived, "2", ["A"]);
    b.build().expect("running example is well formed")
}

/// Actions of `arena` whose names are in `names`; test and report helper.
pub fn action_set(arena: &Arena, names: &[&str]) -> BTreeSet<ActionId> {
    names
        .iter()
        .map(|n| arena.action_by_name(n).expect("known action"))
        .collect()
}
