//! Inference rules as schemas over the metavariables `a`, `b`, `c`, `x`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::parse::parse_statement;
use super::term::{Statement, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    AxLoopId,
    AxGroup,
    AxLdist,
    AxD,
    AssocFromD1,
    CommFromD1,
    D1FromComm,
    DAa,
    Conj,
    Cocycle,
    EDouble,
    EFromD1,
    /// `a in E` gives `d(a, 1) = 1`. This direction is taken as known from
    /// the literature on near-domains; it is only validated on finite
    /// models, where every `d` is 1 anyway.
    D1FromE,
    Rat,
    Subst,
}

pub const ALL_RULES: [Rule; 15] = [
    Rule::AxLoopId,
    Rule::AxGroup,
    Rule::AxLdist,
    Rule::AxD,
    Rule::AssocFromD1,
    Rule::CommFromD1,
    Rule::D1FromComm,
    Rule::DAa,
    Rule::Conj,
    Rule::Cocycle,
    Rule::EDouble,
    Rule::EFromD1,
    Rule::D1FromE,
    Rule::Rat,
    Rule::Subst,
];

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::AxLoopId => "ax-loop-id",
            Rule::AxGroup => "ax-group",
            Rule::AxLdist => "ax-ldist",
            Rule::AxD => "ax-d",
            Rule::AssocFromD1 => "assoc-from-d1",
            Rule::CommFromD1 => "comm-from-d1",
            Rule::D1FromComm => "d1-from-comm",
            Rule::DAa => "d-aa",
            Rule::Conj => "conj",
            Rule::Cocycle => "cocycle",
            Rule::EDouble => "e-double",
            Rule::EFromD1 => "e-from-d1",
            Rule::D1FromE => "d1-from-e",
            Rule::Rat => "rat",
            Rule::Subst => "subst",
        }
    }

    /// Schema variants as (premises, conclusion) source text. Empty for the
    /// rules checked by dedicated code (`rat`, `subst`).
    fn schema_text(self) -> &'static [(&'static [&'static str], &'static str)] {
        match self {
            Rule::AxLoopId => &[(&[], "x + 0 = x"), (&[], "0 + x = x")],
            Rule::AxGroup => &[
                (&[], "a * b * c = a * (b * c)"),
                (&[], "1 * a = a"),
                (&[], "a * 1 = a"),
                (&[], "a * a^-1 = 1"),
                (&[], "a^-1 * a = 1"),
                (&[], "0 * a = 0"),
                (&[], "a * 0 = 0"),
            ],
            Rule::AxLdist => &[(&[], "a * (b + c) = a * b + a * c")],
            Rule::AxD => &[(&[], "a + (b + x) = a + b + d(a, b) * x")],
            Rule::AssocFromD1 => &[(&["d(a, b) = 1"], "a + (b + x) = a + b + x")],
            Rule::CommFromD1 => &[(&["d(a, b) = 1"], "b + a = a + b")],
            Rule::D1FromComm => &[(&["a + b = b + a"], "d(a, b) = 1")],
            Rule::DAa => &[(&[], "d(a, a) = 1")],
            Rule::Conj => &[(&[], "c * d(a, b) * c^-1 = d(c * a, c * b)")],
            Rule::Cocycle => &[(&[], "d(a, b) = d(a, c) * d(c + a, -c + b) * d(-c, b)")],
            Rule::EDouble => &[
                (&["a in E", "b in E"], "(a + b) * 2 in E"),
                (&["a in E", "b in E"], "a + b + (a + b) in E"),
            ],
            Rule::EFromD1 => &[(&["d(a, 1) = 1"], "a in E")],
            Rule::D1FromE => &[(&["a in E"], "d(a, 1) = 1")],
            Rule::Rat | Rule::Subst => &[],
        }
    }

    pub fn schemas(self) -> Vec<Schema> {
        self.schema_text()
            .iter()
            .map(|(prem, concl)| Schema {
                premises: prem
                    .iter()
                    .map(|p| parse_statement(p).expect("rule schema"))
                    .collect(),
                conclusion: parse_statement(concl).expect("rule schema"),
            })
            .collect()
    }

    /// Metavariables that `with` may bind.
    pub fn metavariables(self) -> Vec<String> {
        let mut out: Vec<String> = self
            .schemas()
            .iter()
            .flat_map(|s| {
                s.conclusion
                    .vars()
                    .into_iter()
                    .map(str::to_string)
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for Rule {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_RULES
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

pub type Bindings = BTreeMap<String, Term>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub premises: Vec<Statement>,
    pub conclusion: Statement,
}

fn match_term(pat: &Term, t: &Term, b: &mut Bindings) -> bool {
    match (pat, t) {
        (Term::Var(v), _) => match b.get(v) {
            Some(bound) => bound == t,
            None => {
                b.insert(v.clone(), t.clone());
                true
            }
        },
        (Term::Add(p, q), Term::Add(s, u))
        | (Term::Mul(p, q), Term::Mul(s, u))
        | (Term::D(p, q), Term::D(s, u)) => match_term(p, s, b) && match_term(q, u, b),
        (Term::Inv(p), Term::Inv(s)) | (Term::Neg(p), Term::Neg(s)) => match_term(p, s, b),
        _ => pat == t,
    }
}

fn same_kind(p: &Statement, s: &Statement) -> bool {
    std::mem::discriminant(p) == std::mem::discriminant(s)
}

/// All ways `pat` matches `s` extending `b`; equations match either way
/// round.
pub fn match_statement(pat: &Statement, s: &Statement, b: &Bindings) -> Vec<Bindings> {
    if !same_kind(pat, s) {
        return Vec::new();
    }
    let pats = pat.terms();
    let terms = s.terms();
    let mut orders = vec![terms.clone()];
    if matches!(s, Statement::Eq(..)) {
        orders.push(vec![terms[1], terms[0]]);
    }
    let mut out: Vec<Bindings> = Vec::new();
    for order in orders {
        let mut nb = b.clone();
        if pats
            .iter()
            .zip(&order)
            .all(|(p, t)| match_term(p, t, &mut nb))
            && !out.contains(&nb)
        {
            out.push(nb);
        }
    }
    out
}

pub fn instantiate(t: &Term, b: &Bindings) -> Option<Term> {
    Some(match t {
        Term::Var(v) => b.get(v)?.clone(),
        Term::Add(p, q) => Term::add(instantiate(p, b)?, instantiate(q, b)?),
        Term::Mul(p, q) => Term::mul(instantiate(p, b)?, instantiate(q, b)?),
        Term::D(p, q) => Term::d(instantiate(p, b)?, instantiate(q, b)?),
        Term::Inv(p) => Term::inv(instantiate(p, b)?),
        Term::Neg(p) => Term::neg(instantiate(p, b)?),
        other => other.clone(),
    })
}

pub fn instantiate_statement(s: &Statement, b: &Bindings) -> Option<Statement> {
    let ts: Vec<Term> = s
        .terms()
        .into_iter()
        .map(|t| instantiate(t, b))
        .collect::<Option<_>>()?;
    let mut ts = ts.into_iter();
    let first = ts.next()?;
    Some(match s {
        Statement::Eq(..) => Statement::eq(first, ts.next()?),
        Statement::DTrivial(..) => Statement::DTrivial(first, ts.next()?),
        Statement::InE(_) => Statement::InE(first),
        Statement::Nonzero(_) => Statement::Nonzero(first),
    })
}
