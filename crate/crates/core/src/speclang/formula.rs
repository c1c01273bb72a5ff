use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use super::Propositions;

/// A syntactically co-safe formula in negation normal form.
///
/// Atoms are indices into the [`Propositions`] the formula was parsed
/// against. Conjunctions and disjunctions are n-ary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(u32),
    NotAtom(u32),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
}

impl Formula {
    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(alloc::vec![lhs, rhs])
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(alloc::vec![lhs, rhs])
    }

    pub fn next(inner: Formula) -> Formula {
        Formula::Next(Box::new(inner))
    }

    pub fn until(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Until(Box::new(lhs), Box::new(rhs))
    }

    pub fn eventually(inner: Formula) -> Formula {
        Formula::Eventually(Box::new(inner))
    }

    /// Nesting depth; literals and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) | Formula::NotAtom(_) => 0,
            Formula::And(xs) | Formula::Or(xs) => 1 + xs.iter().map(Formula::depth).max().unwrap_or(0),
            Formula::Next(x) | Formula::Eventually(x) => 1 + x.depth(),
            Formula::Until(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Largest atom index referenced, if any.
    pub fn max_atom(&self) -> Option<u32> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Atom(i) | Formula::NotAtom(i) => Some(*i),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().filter_map(Formula::max_atom).max(),
            Formula::Next(x) | Formula::Eventually(x) => x.max_atom(),
            Formula::Until(a, b) => a.max_atom().max(b.max_atom()),
        }
    }

    /// Renders the formula in the concrete syntax accepted by
    /// [`parse_formula`](super::parse_formula).
    pub fn to_text(&self, props: &Propositions) -> String {
        let mut out = String::new();
        self.write_text(props, &mut out)
            .expect("writing to a String cannot fail");
        out
    }

    fn write_text(&self, props: &Propositions, out: &mut String) -> fmt::Result {
        match self {
            Formula::True => out.write_str("true"),
            Formula::False => out.write_str("false"),
            Formula::Atom(i) => out.write_str(props.name(*i)),
            Formula::NotAtom(i) => write!(out, "!{}", props.name(*i)),
            Formula::And(xs) | Formula::Or(xs) => {
                let op = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                if xs.is_empty() {
                    return out.write_str(if matches!(self, Formula::And(_)) {
                        "true"
                    } else {
                        "false"
                    });
                }
                out.write_char('(')?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        out.write_str(op)?;
                    }
                    x.write_text(props, out)?;
                }
                out.write_char(')')
            }
            Formula::Next(x) => {
                out.write_str("X (")?;
                x.write_text(props, out)?;
                out.write_char(')')
            }
            Formula::Eventually(x) => {
                out.write_str("F (")?;
                x.write_text(props, out)?;
                out.write_char(')')
            }
            Formula::Until(a, b) => {
                out.write_char('(')?;
                a.write_text(props, out)?;
                out.write_str(") U (")?;
                b.write_text(props, out)?;
                out.write_char(')')
            }
        }
    }
}
