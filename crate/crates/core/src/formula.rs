//! Formulas over atoms, `⊥`, `∧` and `→`, their concrete syntax, and the
//! translation into the modal language.
//!
//! Concrete syntax:
//!
//! ```text
//! formula := imp
//! imp     := conj ("->" imp)?
//! conj    := atom ("&" atom)*
//! atom    := IDENT | "_|_" | "bot" | "(" formula ")"
//! ```
//!
//! `&` binds tighter than `->`, `&` associates to the left and `->` to the
//! right.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Arc<str>),
    Bottom,
    And(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(Arc::from(name))
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Arc::new(left), Arc::new(right))
    }

    pub fn imp(left: Formula, right: Formula) -> Self {
        Formula::Imp(Arc::new(left), Arc::new(right))
    }

    /// `φ → ⊥`
    #[allow(clippy::should_implement_trait)]
    pub fn neg(inner: Formula) -> Self {
        Formula::imp(inner, Formula::Bottom)
    }

    /// `⊥ → ⊥`, true at every world.
    pub fn verum() -> Self {
        Formula::imp(Formula::Bottom, Formula::Bottom)
    }

    /// Left-associated conjunction `φ1 ∧ … ∧ φn`. Panics on an empty list.
    pub fn conj_all(items: &[Formula]) -> Self {
        let (first, rest) = items.split_first().expect("conjunction of zero formulas");
        rest.iter()
            .fold(first.clone(), |acc, f| Formula::and(acc, f.clone()))
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Formula::Atom(name) => Some(name),
            _ => None,
        }
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 1,
            Formula::And(l, r) | Formula::Imp(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Nesting depth of `→`: 0 for atoms and `⊥`, the max of the children
    /// for `∧`, one more than the max of the children for `→`.
    pub fn imp_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 0,
            Formula::And(l, r) => l.imp_depth().max(r.imp_depth()),
            Formula::Imp(l, r) => 1 + l.imp_depth().max(r.imp_depth()),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Bottom => {}
            Formula::And(l, r) | Formula::Imp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// All subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    pub(crate) fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        if let Formula::And(l, r) | Formula::Imp(l, r) = self {
            l.collect_subformulas(out);
            r.collect_subformulas(out);
        }
    }

    /// The modal translation: homomorphic on atoms, `⊥` and `∧`, and
    /// `φ → ψ` becomes `□(φ' → ψ')`.
    pub fn translate_modal(&self) -> ModalFormula {
        match self {
            Formula::Atom(name) => ModalFormula::Atom(name.clone()),
            Formula::Bottom => ModalFormula::Bottom,
            Formula::And(l, r) => {
                ModalFormula::And(Box::new(l.translate_modal()), Box::new(r.translate_modal()))
            }
            Formula::Imp(l, r) => ModalFormula::Box(Box::new(ModalFormula::Imp(
                Box::new(l.translate_modal()),
                Box::new(r.translate_modal()),
            ))),
        }
    }
}

/// Modal formulas. Only produced by [`Formula::translate_modal`]; there is
/// no parser for them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ModalFormula {
    Atom(Arc<str>),
    Bottom,
    And(Box<ModalFormula>, Box<ModalFormula>),
    Imp(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
}

impl ModalFormula {
    pub fn box_count(&self) -> usize {
        match self {
            ModalFormula::Atom(_) | ModalFormula::Bottom => 0,
            ModalFormula::And(l, r) | ModalFormula::Imp(l, r) => l.box_count() + r.box_count(),
            ModalFormula::Box(inner) => 1 + inner.box_count(),
        }
    }

    /// Maximal nesting of `□`.
    pub fn modal_depth(&self) -> usize {
        match self {
            ModalFormula::Atom(_) | ModalFormula::Bottom => 0,
            ModalFormula::And(l, r) | ModalFormula::Imp(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            ModalFormula::Box(inner) => 1 + inner.modal_depth(),
        }
    }
}

// Binding strength used by the printers; higher binds tighter.
const PREC_IMP: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_ATOM: u8 = 3;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => PREC_IMP,
        Formula::And(..) => PREC_AND,
        _ => PREC_ATOM,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(f) < min {
        out.write_str("(")?;
        write_at(f, 0, out)?;
        return out.write_str(")");
    }
    match f {
        Formula::Atom(name) => out.write_str(name),
        Formula::Bottom => out.write_str("_|_"),
        Formula::And(l, r) => {
            write_at(l, PREC_AND, out)?;
            out.write_str(" & ")?;
            write_at(r, PREC_ATOM, out)
        }
        Formula::Imp(l, r) => {
            write_at(l, PREC_AND, out)?;
            out.write_str(" -> ")?;
            write_at(r, PREC_IMP, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

fn modal_prec(f: &ModalFormula) -> u8 {
    match f {
        ModalFormula::Imp(..) => PREC_IMP,
        ModalFormula::And(..) => PREC_AND,
        _ => PREC_ATOM,
    }
}

fn write_modal_at(f: &ModalFormula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if modal_prec(f) < min {
        out.write_str("(")?;
        write_modal_at(f, 0, out)?;
        return out.write_str(")");
    }
    match f {
        ModalFormula::Atom(name) => out.write_str(name),
        ModalFormula::Bottom => out.write_str("_|_"),
        ModalFormula::And(l, r) => {
            write_modal_at(l, PREC_AND, out)?;
            out.write_str(" & ")?;
            write_modal_at(r, PREC_ATOM, out)
        }
        ModalFormula::Imp(l, r) => {
            write_modal_at(l, PREC_AND, out)?;
            out.write_str(" -> ")?;
            write_modal_at(r, PREC_IMP, out)
        }
        ModalFormula::Box(inner) => {
            out.write_str("[]")?;
            write_modal_at(inner, PREC_ATOM, out)
        }
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_modal_at(self, 0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token at offset {pos}: {found:?}")]
    UnknownToken { pos: usize, found: char },
    #[error("syntax error at offset {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: &'static str,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Bottom,
    And,
    Arrow,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(name) => write!(f, "identifier `{name}`"),
            Token::Bottom => f.write_str("`_|_`"),
            Token::And => f.write_str("`&`"),
            Token::Arrow => f.write_str("`->`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '&' => {
                chars.next();
                tokens.push((pos, Token::And));
            }
            '(' => {
                chars.next();
                tokens.push((pos, Token::LParen));
            }
            ')' => {
                chars.next();
                tokens.push((pos, Token::RParen));
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some((_, '>')) => tokens.push((pos, Token::Arrow)),
                    Some(_) => return Err(ParseError::UnknownToken { pos, found: '-' }),
                    None => {
                        return Err(ParseError::Syntax {
                            pos: text.len(),
                            expected: "`>` after `-`",
                            found: "end of input".into(),
                        })
                    }
                }
            }
            '_' => {
                if text[pos..].starts_with("_|_") {
                    chars.nth(2);
                    tokens.push((pos, Token::Bottom));
                } else {
                    return Err(ParseError::UnknownToken { pos, found: c });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = pos;
                while let Some(&(p, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        end = p + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let word = &text[pos..end];
                if word == "bot" {
                    tokens.push((pos, Token::Bottom));
                } else {
                    tokens.push((pos, Token::Ident(word.to_string())));
                }
            }
            other => return Err(ParseError::UnknownToken { pos, found: other }),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    next: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.next).map_or(self.end, |(p, _)| *p)
    }

    fn found(&self) -> String {
        self.peek()
            .map_or_else(|| "end of input".to_string(), Token::to_string)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let left = self.conj()?;
        if self.peek() == Some(&Token::Arrow) {
            self.next += 1;
            let right = self.imp()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Token::And) {
            self.next += 1;
            let right = self.atom()?;
            acc = Formula::and(acc, right);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.next += 1;
                Ok(Formula::atom(&name))
            }
            Some(Token::Bottom) => {
                self.next += 1;
                Ok(Formula::Bottom)
            }
            Some(Token::LParen) => {
                self.next += 1;
                let inner = self.imp()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(ParseError::Syntax {
                        pos: self.pos(),
                        expected: "`)`",
                        found: self.found(),
                    });
                }
                self.next += 1;
                Ok(inner)
            }
            _ => Err(ParseError::Syntax {
                pos,
                expected: "an atom, `_|_` or `(`",
                found: self.found(),
            }),
        }
    }
}

/// Whether `name` is a legal atom: `[a-zA-Z][a-zA-Z0-9_]*`, not `bot`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "bot"
}

/// Parses a formula in the concrete syntax described in the module docs.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        next: 0,
        end: text.len(),
    };
    let formula = parser.imp()?;
    if parser.next != parser.tokens.len() {
        return Err(ParseError::Syntax {
            pos: parser.pos(),
            expected: "end of input",
            found: parser.found(),
        });
    }
    Ok(formula)
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
