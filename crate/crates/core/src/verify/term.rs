//! Near-domain terms and statements.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A term over the near-domain signature.
///
/// Constants are kept normalized: `Rat` never holds 0, 1 or a negative
/// value (those are `Zero`, `One` and `Neg(..)`), so structural equality is
/// equality up to rational normalization. Build constants with
/// [`Term::constant`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    One,
    Rat(Rational),
    Var(String),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
    Neg(Box<Term>),
    D(Box<Term>, Box<Term>),
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn constant(q: Rational) -> Term {
        if q.is_zero() {
            Term::Zero
        } else if q.is_one() {
            Term::One
        } else if q.is_negative() {
            Term::Neg(Box::new(Term::constant(-q)))
        } else {
            Term::Rat(q)
        }
    }

    pub fn int(m: i64) -> Term {
        Term::constant(Rational::from_integer(m.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Term {
        Term::constant(Rational::new(num.into(), den.into()))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn d(a: Term, b: Term) -> Term {
        Term::D(Box::new(a), Box::new(b))
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Zero | Term::One | Term::Rat(_) | Term::Var(_) => vec![],
            Term::Inv(t) | Term::Neg(t) => vec![t],
            Term::Add(a, b) | Term::Mul(a, b) | Term::D(a, b) => vec![a, b],
        }
    }

    fn child_mut(&mut self, i: usize) -> Option<&mut Term> {
        match (self, i) {
            (Term::Inv(t) | Term::Neg(t), 1) => Some(t),
            (Term::Add(a, _) | Term::Mul(a, _) | Term::D(a, _), 1) => Some(a),
            (Term::Add(_, b) | Term::Mul(_, b) | Term::D(_, b), 2) => Some(b),
            _ => None,
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i.checked_sub(1)?)?.subterm(rest),
        }
    }

    /// Copy with the subterm at `path` replaced.
    pub fn replace(&self, path: &[usize], with: &Term) -> Option<Term> {
        let mut out = self.clone();
        let slot = path.iter().try_fold(&mut out, |t, &i| t.child_mut(i))?;
        *slot = with.clone();
        Some(out)
    }

    /// Every subterm with its 1-based path, preorder.
    pub fn positions(&self) -> Vec<(Vec<usize>, &Term)> {
        let mut out = vec![(Vec::new(), self)];
        for (i, c) in self.children().into_iter().enumerate() {
            for (mut p, t) in c.positions() {
                p.insert(0, i + 1);
                out.push((p, t));
            }
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            _ => self
                .children()
                .into_iter()
                .for_each(|c| c.collect_vars(out)),
        }
    }

    /// The value of a variable-free, `d`-free term in the rationals.
    /// `None` if the term is not such a constant or inverts zero.
    pub fn eval_constant(&self) -> Option<Rational> {
        match self {
            Term::Zero => Some(Rational::zero()),
            Term::One => Some(Rational::one()),
            Term::Rat(q) => Some(q.clone()),
            Term::Var(_) | Term::D(..) => None,
            Term::Add(a, b) => Some(a.eval_constant()? + b.eval_constant()?),
            Term::Mul(a, b) => Some(a.eval_constant()? * b.eval_constant()?),
            Term::Neg(a) => Some(-a.eval_constant()?),
            Term::Inv(a) => {
                let q = a.eval_constant()?;
                (!q.is_zero()).then(|| q.recip())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Add(..) => 1,
            Term::Mul(..) => 2,
            Term::Neg(_) => 3,
            Term::Inv(_) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Term::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Term::Var(v) => f.write_str(v),
            Term::Add(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 2)
            }
            Term::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str(" * ")?;
                b.fmt_at(f, 3)
            }
            Term::Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 3)
            }
            Term::Inv(a) => {
                // a negative literal base would print as -(q^-1)
                match &**a {
                    Term::Rat(q) if q.is_negative() => {
                        f.write_str("(")?;
                        a.fmt_at(f, 0)?;
                        f.write_str(")")?;
                    }
                    _ => a.fmt_at(f, 5)?,
                }
                f.write_str("^-1")
            }
            Term::D(a, b) => {
                f.write_str("d(")?;
                a.fmt_at(f, 0)?;
                f.write_str(", ")?;
                b.fmt_at(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// A judgment about terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Statement {
    Eq(Term, Term),
    InE(Term),
    /// `d(a, b) = 1`
    DTrivial(Term, Term),
    /// Side-condition hypothesis: the term is not 0.
    Nonzero(Term),
}

impl Statement {
    /// `lhs = rhs`, read as `DTrivial` when one side is `d(a, b)` and the
    /// other is 1.
    pub fn eq(lhs: Term, rhs: Term) -> Statement {
        match (lhs, rhs) {
            (Term::D(a, b), Term::One) | (Term::One, Term::D(a, b)) => Statement::DTrivial(*a, *b),
            (l, r) => Statement::Eq(l, r),
        }
    }

    /// Equality up to swapping the sides of an equation.
    pub fn same_as(&self, other: &Statement) -> bool {
        match (self, other) {
            (Statement::Eq(a, b), Statement::Eq(c, d)) => (a == c && b == d) || (a == d && b == c),
            _ => self == other,
        }
    }

    /// The two sides when the statement can be used as an equation.
    pub fn as_equation(&self) -> Option<(Term, Term)> {
        match self {
            Statement::Eq(l, r) => Some((l.clone(), r.clone())),
            Statement::DTrivial(a, b) => Some((Term::d(a.clone(), b.clone()), Term::One)),
            _ => None,
        }
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Statement::Eq(a, b) | Statement::DTrivial(a, b) => vec![a, b],
            Statement::InE(t) | Statement::Nonzero(t) => vec![t],
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        let (&i, rest) = path.split_first()?;
        self.terms().get(i.checked_sub(1)?)?.subterm(rest)
    }

    pub fn replace(&self, path: &[usize], with: &Term) -> Option<Statement> {
        let (&i, rest) = path.split_first()?;
        let mut parts: Vec<Term> = self.terms().into_iter().cloned().collect();
        let slot = parts.get_mut(i.checked_sub(1)?)?;
        *slot = slot.replace(rest, with)?;
        let mut parts = parts.into_iter();
        let first = parts.next().expect("nonempty");
        Some(match self {
            Statement::Eq(..) => Statement::eq(first, parts.next().expect("two sides")),
            Statement::DTrivial(..) => Statement::DTrivial(first, parts.next().expect("two sides")),
            Statement::InE(_) => Statement::InE(first),
            Statement::Nonzero(_) => Statement::Nonzero(first),
        })
    }

    /// Every subterm position, with the statement-level index first.
    pub fn positions(&self) -> Vec<(Vec<usize>, &Term)> {
        let mut out = Vec::new();
        for (i, t) in self.terms().into_iter().enumerate() {
            for (mut p, s) in t.positions() {
                p.insert(0, i + 1);
                out.push((p, s));
            }
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        self.terms().into_iter().flat_map(Term::vars).collect()
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Eq(a, b) => write!(f, "{a} = {b}"),
            Statement::InE(t) => write!(f, "{t} in E"),
            Statement::DTrivial(a, b) => write!(f, "d({a}, {b}) = 1"),
            Statement::Nonzero(t) => write!(f, "nonzero {t}"),
        }
    }
}
