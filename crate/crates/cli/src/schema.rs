//! JSON input documents.
//!
//! ```json
//! {
//!   "states": [{"id": "0", "player": 1}, {"id": "1", "player": 2}],
//!   "init": "0",
//!   "ap": ["A"],
//!   "edges": [{"from": "0", "to": "1"}, {"from": "1", "to": "0", "action": "back"}],
//!   "label_true": {"1": ["A"]},
//!   "label_perceived": {},
//!   "objective": {"formula": "F A"}
//! }
//! ```
//!
//! State ids may be strings or non-negative integers. Edges without an
//! `action` get the name `"<from>-><to>"`. Unlisted states have empty labels.
//! The objective is either `{"formula": ...}` or an explicit automaton
//! `{"dfa": {"states", "initial", "accepting", "transitions": [{"from", "symbol", "to"}]}}`
//! where `symbol` lists the propositions of the letter.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use hypergame_core::{
    parse_formula, ArenaBuilder, ArenaError, Dfa, HypergameInput, Labeling, Objective, Player, Propositions, SpecError,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error(transparent)]
    Arena(#[from] ArenaError),
    #[error("objective: {0}")]
    Spec(#[from] SpecError),
}

/// A state id as written in the document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Name(String),
    Number(u64),
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Name(s) => f.write_str(s),
            Id::Number(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub id: Id,
    pub player: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: Id,
    pub to: Id,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub from: String,
    pub symbol: Vec<String>,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaDoc {
    pub states: Vec<String>,
    pub initial: String,
    pub accepting: Vec<String>,
    pub transitions: Vec<TransitionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ObjectiveDoc {
    Formula(String),
    Dfa(DfaDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub states: Vec<StateDoc>,
    pub init: Id,
    #[serde(default)]
    pub ap: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub label_true: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub label_perceived: BTreeMap<String, Vec<String>>,
    pub objective: ObjectiveDoc,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, LoadError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validates the document and builds the hypergame input.
    pub fn to_input(&self) -> Result<HypergameInput, LoadError> {
        let props = Propositions::new(self.ap.iter().map(String::as_str))?;
        let mut b = ArenaBuilder::new(props.clone());
        for st in &self.states {
            let owner = match st.player {
                1 => Player::P1,
                2 => Player::P2,
                other => {
                    return Err(LoadError::Schema(format!(
                        "state `{}` has player {other}, expected 1 or 2",
                        st.id
                    )))
                }
            };
            b.state(st.id.to_string(), owner);
        }
        for e in &self.edges {
            b.edge(e.from.to_string(), e.to.to_string(), e.action.as_deref());
        }
        b.initial(self.init.to_string());
        for (labeling, labels) in [
            (Labeling::True, &self.label_true),
            (Labeling::Perceived, &self.label_perceived),
        ] {
            for (state, names) in labels {
                b.label(labeling, state.as_str(), names.iter().map(String::as_str));
            }
        }
        let arena = b.build()?;
        let objective = match &self.objective {
            ObjectiveDoc::Formula(text) => Objective::Formula(parse_formula(text, &props)?),
            ObjectiveDoc::Dfa(d) => Objective::Dfa(dfa_from_doc(d, &props)?),
        };
        Ok(HypergameInput::new(arena, objective)?)
    }

    /// The document describing `input`. Every edge gets its explicit action
    /// name and only non-empty labels are listed.
    pub fn from_input(input: &HypergameInput) -> Document {
        let arena = &input.arena;
        let props = arena.props();
        let states = arena
            .states()
            .map(|s| StateDoc {
                id: Id::Name(arena.state_name(s).to_string()),
                player: arena.owner(s).number(),
            })
            .collect();
        let edges = arena
            .edges()
            .map(|(s, a, t)| EdgeDoc {
                from: Id::Name(arena.state_name(s).to_string()),
                to: Id::Name(arena.state_name(t).to_string()),
                action: Some(arena.action_name(a).to_string()),
            })
            .collect();
        let labels = |labeling| -> BTreeMap<String, Vec<String>> {
            arena
                .states()
                .filter_map(|s| {
                    let names = props.symbol_names(arena.label(labeling, s));
                    (!names.is_empty()).then(|| {
                        (
                            arena.state_name(s).to_string(),
                            names.into_iter().map(String::from).collect(),
                        )
                    })
                })
                .collect()
        };
        let objective = match &input.objective {
            Objective::Formula(f) => ObjectiveDoc::Formula(f.to_text(props)),
            Objective::Dfa(d) => ObjectiveDoc::Dfa(dfa_to_doc(d)),
        };
        Document {
            states,
            init: Id::Name(arena.state_name(arena.initial()).to_string()),
            ap: props.names().to_vec(),
            edges,
            label_true: labels(Labeling::True),
            label_perceived: labels(Labeling::Perceived),
            objective,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

fn dfa_from_doc(d: &DfaDoc, props: &Propositions) -> Result<Dfa, LoadError> {
    let mut transitions = Vec::with_capacity(d.transitions.len());
    for t in &d.transitions {
        let symbol = props
            .symbol(t.symbol.iter().map(String::as_str))
            .ok_or_else(|| LoadError::Schema(format!("transition from `{}` uses an undeclared proposition", t.from)))?;
        transitions.push((t.from.clone(), symbol, t.to.clone()));
    }
    let accepting: Vec<&str> = d.accepting.iter().map(String::as_str).collect();
    Ok(Dfa::from_parts(
        props.clone(),
        d.states.clone(),
        &d.initial,
        &accepting,
        transitions,
    )?)
}

fn dfa_to_doc(d: &Dfa) -> DfaDoc {
    let props = d.props();
    DfaDoc {
        states: (0..d.num_states()).map(|q| d.state_name(q).to_string()).collect(),
        initial: d.state_name(d.initial()).to_string(),
        accepting: d.accepting().map(|q| d.state_name(q).to_string()).collect(),
        transitions: d
            .transitions()
            .map(|(q, letter, to)| TransitionDoc {
                from: d.state_name(q).to_string(),
                symbol: props.symbol_names(letter).into_iter().map(String::from).collect(),
                to: d.state_name(to).to_string(),
            })
            .collect(),
    }
}

/// Parses and validates a document.
pub fn load_arena(text: &str) -> Result<HypergameInput, LoadError> {
    Document::parse(text)?.to_input()
}

pub fn load_arena_file(path: &Path) -> Result<HypergameInput, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_arena(&text)
}

/// Serializes `input` as a document that [`load_arena`] reads back to an
/// identical input.
pub fn save_arena(input: &HypergameInput) -> String {
    Document::from_input(input).to_json()
}
