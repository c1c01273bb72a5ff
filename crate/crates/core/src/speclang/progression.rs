//! Formula progression over finite words.
//!
//! A residual formula is what remains to be satisfied after a prefix has been
//! read. Residuals are kept in a canonical disjunctive normal form so that
//! syntactically different but ACI-equivalent residuals map to the same
//! automaton state: operands are flattened, sorted and deduplicated, `true` and
//! `false` are absorbed, contradictory clauses dropped and subsumed clauses
//! removed. Every literal of a residual is a (normalized) subformula of the
//! original formula, so the set of residuals is finite.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Formula, Symbol};

type Clause = BTreeSet<Formula>;
type Dnf = BTreeSet<Clause>;

fn dnf_true() -> Dnf {
    let mut d = Dnf::new();
    d.insert(Clause::new());
    d
}

fn dnf_literal(f: Formula) -> Dnf {
    let mut c = Clause::new();
    c.insert(f);
    let mut d = Dnf::new();
    d.insert(c);
    d
}

fn contradictory(clause: &Clause) -> bool {
    clause.iter().any(|lit| match lit {
        Formula::Atom(i) => clause.contains(&Formula::NotAtom(*i)),
        _ => false,
    })
}

/// Drops contradictory clauses and clauses subsumed by a smaller one.
fn simplify(d: Dnf) -> Dnf {
    let clauses: Vec<Clause> = d.into_iter().filter(|c| !contradictory(c)).collect();
    if clauses.iter().any(|c| c.is_empty()) {
        return dnf_true();
    }
    let mut out = Dnf::new();
    for (i, c) in clauses.iter().enumerate() {
        let subsumed = clauses
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && other.is_subset(c) && (other.len() < c.len() || j < i));
        if !subsumed {
            out.insert(c.clone());
        }
    }
    out
}

fn conjoin(a: &Dnf, b: &Dnf) -> Dnf {
    let mut out = Dnf::new();
    for ca in a {
        for cb in b {
            out.insert(ca.union(cb).cloned().collect());
        }
    }
    simplify(out)
}

fn to_dnf(f: &Formula) -> Dnf {
    match f {
        Formula::True => dnf_true(),
        Formula::False => Dnf::new(),
        Formula::Atom(_) | Formula::NotAtom(_) => dnf_literal(f.clone()),
        Formula::And(xs) => xs.iter().fold(dnf_true(), |acc, x| conjoin(&acc, &to_dnf(x))),
        Formula::Or(xs) => simplify(xs.iter().flat_map(to_dnf).collect()),
        Formula::Next(x) => match normalize(x) {
            Formula::False => Dnf::new(),
            inner => dnf_literal(Formula::next(inner)),
        },
        Formula::Eventually(x) => match normalize(x) {
            Formula::True => dnf_true(),
            Formula::False => Dnf::new(),
            inner => dnf_literal(Formula::eventually(inner)),
        },
        Formula::Until(a, b) => match (normalize(a), normalize(b)) {
            (_, Formula::True) => dnf_true(),
            (_, Formula::False) => Dnf::new(),
            (Formula::False, rhs) => to_dnf(&rhs),
            (Formula::True, rhs) => dnf_literal(Formula::eventually(rhs)),
            (lhs, rhs) => dnf_literal(Formula::until(lhs, rhs)),
        },
    }
}

fn from_dnf(d: Dnf) -> Formula {
    let mut disjuncts: Vec<Formula> = d
        .into_iter()
        .map(|clause| {
            let mut lits: Vec<Formula> = clause.into_iter().collect();
            match lits.len() {
                0 => Formula::True,
                1 => lits.pop().unwrap(),
                _ => Formula::And(lits),
            }
        })
        .collect();
    match disjuncts.len() {
        0 => Formula::False,
        1 => disjuncts.pop().unwrap(),
        _ => Formula::Or(disjuncts),
    }
}

/// Canonical representative of `f`. Idempotent.
pub fn normalize(f: &Formula) -> Formula {
    from_dnf(to_dnf(f))
}

/// The residual of `f` after reading `letter` (not normalized).
pub fn progress(f: &Formula, letter: Symbol) -> Formula {
    match f {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Atom(i) => bool_formula(letter.contains(*i)),
        Formula::NotAtom(i) => bool_formula(!letter.contains(*i)),
        Formula::And(xs) => Formula::And(xs.iter().map(|x| progress(x, letter)).collect()),
        Formula::Or(xs) => Formula::Or(xs.iter().map(|x| progress(x, letter)).collect()),
        Formula::Next(x) => (**x).clone(),
        Formula::Until(a, b) => Formula::or(progress(b, letter), Formula::and(progress(a, letter), f.clone())),
        Formula::Eventually(x) => Formula::or(progress(x, letter), f.clone()),
    }
}

/// Whether `f` is satisfied by the empty remainder of a word, i.e. whether
/// the prefix read so far is already a good prefix.
pub fn holds_at_end(f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::False | Formula::Atom(_) | Formula::NotAtom(_) | Formula::Next(_) => false,
        Formula::And(xs) => xs.iter().all(holds_at_end),
        Formula::Or(xs) => xs.iter().any(holds_at_end),
        Formula::Until(_, b) => holds_at_end(b),
        Formula::Eventually(x) => holds_at_end(x),
    }
}

fn bool_formula(b: bool) -> Formula {
    if b {
        Formula::True
    } else {
        Formula::False
    }
}
