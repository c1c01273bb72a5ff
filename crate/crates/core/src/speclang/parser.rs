//! Recursive-descent parser for the formula syntax
//!
//! ```text
//! phi ::= true | false | atom | ! atom | phi & phi | phi | phi
//!       | X phi | phi U phi | F phi | ( phi )
//! ```
//!
//! Precedence, tightest first: unary operators, `U` (right-associative),
//! `&`, `|`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{Formula, Propositions, SpecError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    True,
    False,
    Ident(String),
    Not,
    And,
    Or,
    Next,
    Until,
    Eventually,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Ident(name) => alloc::format!("atom `{name}`"),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Next => "`X`".into(),
            Tok::Until => "`U`".into(),
            Tok::Eventually => "`F`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const EXPECT_OPERAND: &[&str] = &["true", "false", "atom", "!", "X", "F", "("];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SpecError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "X" => Tok::Next,
                    "U" => Tok::Until,
                    "F" => Tok::Eventually,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                let found = text[i..]
                    .chars()
                    .next()
                    .map(|c| alloc::format!("`{c}`"))
                    .unwrap_or_default();
                return Err(SpecError::Syntax {
                    position: i,
                    found,
                    expected: EXPECT_OPERAND.to_vec(),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    props: &'a Propositions,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> SpecError {
        SpecError::Syntax {
            position: self.offset(),
            found: self.peek().describe(),
            expected: expected.to_vec(),
        }
    }

    fn atom(&self, name: &str, position: usize) -> Result<u32, SpecError> {
        self.props.index_of(name).ok_or_else(|| SpecError::UndeclaredAtom {
            name: name.to_string(),
            position,
        })
    }

    fn disjunction(&mut self) -> Result<Formula, SpecError> {
        let mut operands = vec![self.conjunction()?];
        while *self.peek() == Tok::Or {
            self.bump();
            operands.push(self.conjunction()?);
        }
        Ok(collapse(operands, Formula::Or))
    }

    fn conjunction(&mut self) -> Result<Formula, SpecError> {
        let mut operands = vec![self.until()?];
        while *self.peek() == Tok::And {
            self.bump();
            operands.push(self.until()?);
        }
        Ok(collapse(operands, Formula::And))
    }

    fn until(&mut self) -> Result<Formula, SpecError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Until {
            self.bump();
            let rhs = self.until()?;
            return Ok(Formula::until(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SpecError> {
        match self.peek().clone() {
            Tok::Not => {
                let (at, _) = self.bump();
                match self.bump() {
                    (pos, Tok::Ident(name)) => Ok(Formula::NotAtom(self.atom(&name, pos)?)),
                    (_, Tok::End) => {
                        self.pos = self.toks.len() - 1;
                        Err(self.error(&["atom"]))
                    }
                    _ => Err(SpecError::NegatedNonAtom { position: at }),
                }
            }
            Tok::Next => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::Eventually => {
                self.bump();
                Ok(Formula::eventually(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, SpecError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                let (pos, _) = self.bump();
                Ok(Formula::Atom(self.atom(&name, pos)?))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.disjunction()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&[")", "&", "|", "U"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(EXPECT_OPERAND)),
        }
    }
}

fn collapse(mut operands: Vec<Formula>, build: fn(Vec<Formula>) -> Formula) -> Formula {
    if operands.len() == 1 {
        operands.pop().unwrap()
    } else {
        build(operands)
    }
}

/// Parses `text` against the declared propositions `props`.
pub fn parse_formula(text: &str, props: &Propositions) -> Result<Formula, SpecError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        props,
    };
    let formula = parser.disjunction()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&["&", "|", "U", "end of input"]));
    }
    Ok(formula)
}
