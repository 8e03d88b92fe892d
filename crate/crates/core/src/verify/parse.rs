//! The derivation script language.
//!
//! ```text
//! var a, b
//! assume d(a, 1/2) = 1
//! nonzero a + 1
//! step 1/2 + a = a + 1/2 by comm-from-d1 from 1
//! step x = y by subst from 3, 2 at 1.2
//! qed 1/2 + a = a + 1/2
//! ```
//!
//! Items (`assume`, `nonzero`, `step`) are numbered from 1 in order of
//! appearance; `from` cites those numbers. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::rules::Rule;
use super::term::{Statement, Term};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub with: Vec<(String, Term)>,
    pub premises: Vec<usize>,
    pub at: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemKind {
    Assume,
    Nonzero,
    Step(Step),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub statement: Statement,
    pub kind: ItemKind,
    /// Source line, or 0 for items built in code.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Derivation {
    pub vars: Vec<String>,
    pub items: Vec<Item>,
    pub goal: Option<Statement>,
}

impl Derivation {
    pub fn hypotheses(&self) -> impl Iterator<Item = &Statement> {
        self.items
            .iter()
            .filter(|i| !matches!(i.kind, ItemKind::Step(_)))
            .map(|i| &i.statement)
    }

    pub fn steps(&self) -> impl Iterator<Item = (&Statement, &Step)> {
        self.items.iter().filter_map(|i| match &i.kind {
            ItemKind::Step(s) => Some((&i.statement, s)),
            _ => None,
        })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            writeln!(f, "var {}", self.vars.join(", "))?;
        }
        for item in &self.items {
            match &item.kind {
                ItemKind::Assume => writeln!(f, "assume {}", item.statement)?,
                ItemKind::Nonzero => match &item.statement {
                    Statement::Nonzero(t) => writeln!(f, "nonzero {t}")?,
                    s => writeln!(f, "assume {s}")?,
                },
                ItemKind::Step(step) => {
                    write!(f, "step {} by {}", item.statement, step.rule)?;
                    if !step.with.is_empty() {
                        let parts: Vec<String> =
                            step.with.iter().map(|(v, t)| format!("{v}={t}")).collect();
                        write!(f, " with {}", parts.join(", "))?;
                    }
                    if !step.premises.is_empty() {
                        let parts: Vec<String> =
                            step.premises.iter().map(usize::to_string).collect();
                        write!(f, " from {}", parts.join(", "))?;
                    }
                    if let Some(path) = &step.at {
                        let parts: Vec<String> = path.iter().map(usize::to_string).collect();
                        write!(f, " at {}", parts.join("."))?;
                    }
                    writeln!(f)?;
                }
            }
        }
        if let Some(goal) = &self.goal {
            writeln!(f, "qed {goal}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
    Caret,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Caret => f.write_str("`^`"),
        }
    }
}

/// Cursor over one source line.
struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    /// Identifiers accepted in terms; `None` accepts any.
    vars: Option<&'a BTreeSet<String>>,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            column: self.column(),
            message: message.into(),
        })
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn lex(&self) -> Option<(Tok, usize)> {
        let rest = &self.src[self.pos..];
        let c = rest.chars().next()?;
        if c.is_ascii_digit() {
            let len = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            return Some((Tok::Num(rest[..len].parse().expect("digits")), len));
        }
        if c.is_alphabetic() || c == '_' {
            let len = rest
                .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '\''))
                .unwrap_or(rest.len());
            return Some((Tok::Ident(rest[..len].to_string()), len));
        }
        if c == '^' {
            return Some((Tok::Caret, 1));
        }
        Some((Tok::Sym(c), c.len_utf8()))
    }

    fn peek(&mut self) -> Option<Tok> {
        self.skip_ws();
        self.lex().map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        self.skip_ws();
        let (t, len) = self.lex()?;
        self.pos += len;
        Some(t)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(Tok::Sym(c)) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek() == Some(Tok::Ident(kw.to_string())) {
            self.next();
            true
        } else {
            false
        }
    }

    fn unexpected<T>(&mut self, wanted: &str) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    /// A whitespace-delimited word.
    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == ',')
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        match self.next() {
            Some(Tok::Num(n)) => usize::try_from(n).or_else(|_| self.error("index too large")),
            _ => self.error("expected an item number"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.product()?;
        while self.eat_sym('+') {
            t = Term::add(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut t = self.unary()?;
        while self.eat_sym('*') {
            t = Term::mul(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        if self.eat_sym('-') {
            return Ok(Term::neg(self.unary()?));
        }
        let start = self.pos;
        let mut t = self.atom()?;
        while self.peek() == Some(Tok::Caret) {
            self.next();
            if !(self.eat_sym('-') && self.next() == Some(Tok::Num(BigInt::from(1)))) {
                return self.error("expected `^-1`");
            }
            if t.eval_constant().is_some_and(|q| q.is_zero()) {
                self.pos = start;
                return self.error("inverse of zero");
            }
            t = Term::inv(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(Tok::Num(_)) => {
                let Some(Tok::Num(num)) = self.next() else {
                    unreachable!()
                };
                if self.eat_sym('/') {
                    match self.next() {
                        Some(Tok::Num(den)) if !den.is_zero() => {
                            Ok(Term::constant(Rational::new(num, den)))
                        }
                        Some(Tok::Num(_)) => {
                            self.pos = start;
                            self.error("zero denominator")
                        }
                        _ => self.error("expected a denominator"),
                    }
                } else {
                    Ok(Term::constant(Rational::from_integer(num)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.next();
                if name == "d" && self.peek() == Some(Tok::Sym('(')) {
                    self.next();
                    let a = self.term()?;
                    self.expect_sym(',')?;
                    let b = self.term()?;
                    self.expect_sym(')')?;
                    return Ok(Term::d(a, b));
                }
                if self.vars.is_some_and(|v| !v.contains(&name)) {
                    self.pos = start;
                    self.skip_ws();
                    return self.error(format!("undeclared variable `{name}`"));
                }
                Ok(Term::Var(name))
            }
            Some(Tok::Sym('(')) => {
                self.next();
                let t = self.term()?;
                self.expect_sym(')')?;
                Ok(t)
            }
            _ => self.unexpected("a term"),
        }
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let lhs = self.term()?;
        if self.eat_keyword("in") {
            if self.eat_keyword("E") {
                return Ok(Statement::InE(lhs));
            }
            return self.unexpected("`E`");
        }
        self.expect_sym('=')?;
        Ok(Statement::eq(lhs, self.term()?))
    }
}

/// Parses a term with no variable declarations; any identifier is a
/// variable.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut lx = Lexer {
        src: text,
        pos: 0,
        line: 1,
        vars: None,
    };
    let t = lx.term()?;
    if !lx.at_end() {
        return lx.unexpected("end of input");
    }
    Ok(t)
}

/// Parses a statement with no variable declarations.
pub fn parse_statement(text: &str) -> Result<Statement, ParseError> {
    let mut lx = Lexer {
        src: text,
        pos: 0,
        line: 1,
        vars: None,
    };
    let s = lx.statement()?;
    if !lx.at_end() {
        return lx.unexpected("end of input");
    }
    Ok(s)
}

pub fn parse_derivation(text: &str) -> Result<Derivation, ParseError> {
    let mut vars = BTreeSet::new();
    let mut out = Derivation::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let src = raw.split('#').next().unwrap_or("");
        if src.trim().is_empty() {
            continue;
        }
        let declared = vars.clone();
        let mut lx = Lexer {
            src,
            pos: 0,
            line,
            vars: Some(&declared),
        };
        if out.goal.is_some() {
            return lx.error("content after `qed`");
        }
        let keyword = lx.word().expect("nonblank line");
        match keyword {
            "var" => loop {
                match lx.next() {
                    Some(Tok::Ident(name)) if name == "d" || name == "E" => {
                        return lx.error(format!("`{name}` is reserved"));
                    }
                    Some(Tok::Ident(name)) => {
                        if vars.insert(name.clone()) {
                            out.vars.push(name);
                        }
                    }
                    _ => return lx.error("expected a variable name"),
                }
                if lx.at_end() {
                    break;
                }
                lx.expect_sym(',')?;
            },
            "assume" => {
                let statement = lx.statement()?;
                out.items.push(Item {
                    statement,
                    kind: ItemKind::Assume,
                    line,
                });
            }
            "nonzero" => {
                let t = lx.term()?;
                out.items.push(Item {
                    statement: Statement::Nonzero(t),
                    kind: ItemKind::Nonzero,
                    line,
                });
            }
            "step" => {
                let statement = lx.statement()?;
                if !lx.eat_keyword("by") {
                    return lx.unexpected("`by`");
                }
                let rule_col = {
                    lx.skip_ws();
                    lx.pos
                };
                let name = lx
                    .word()
                    .ok_or(())
                    .or_else(|_| lx.error("expected a rule name"))?;
                let rule: Rule = name.parse().or_else(|_| {
                    lx.pos = rule_col;
                    lx.error(format!("unknown rule `{name}`"))
                })?;
                let mut step = Step {
                    rule,
                    with: Vec::new(),
                    premises: Vec::new(),
                    at: None,
                };
                loop {
                    if lx.eat_keyword("with") {
                        loop {
                            let Some(Tok::Ident(v)) = lx.next() else {
                                return lx.error("expected a rule variable");
                            };
                            lx.expect_sym('=')?;
                            step.with.push((v, lx.term()?));
                            if !lx.eat_sym(',') {
                                break;
                            }
                        }
                    } else if lx.eat_keyword("from") {
                        loop {
                            let col = lx.pos;
                            let idx = lx.index()?;
                            if idx == 0 || idx > out.items.len() {
                                lx.pos = col;
                                lx.skip_ws();
                                return lx.error(format!(
                                    "premise {idx} does not refer to an earlier item"
                                ));
                            }
                            step.premises.push(idx);
                            if !lx.eat_sym(',') {
                                break;
                            }
                        }
                    } else if lx.eat_keyword("at") {
                        let col = lx.pos;
                        let word = lx.word().unwrap_or("");
                        let path: Option<Vec<usize>> = word
                            .split('.')
                            .map(|p| p.parse().ok().filter(|&i: &usize| i > 0))
                            .collect();
                        match path {
                            Some(p) => step.at = Some(p),
                            None => {
                                lx.pos = col;
                                lx.skip_ws();
                                return lx.error(format!("bad position `{word}`"));
                            }
                        }
                    } else if lx.at_end() {
                        break;
                    } else {
                        return lx.unexpected("`with`, `from`, `at` or end of line");
                    }
                }
                out.items.push(Item {
                    statement,
                    kind: ItemKind::Step(step),
                    line,
                });
            }
            "qed" => out.goal = Some(lx.statement()?),
            other => {
                lx.pos = 0;
                lx.skip_ws();
                return lx.error(format!("unknown directive `{other}`"));
            }
        }
        if !lx.at_end() {
            return lx.unexpected("end of line");
        }
    }
    Ok(out)
}
