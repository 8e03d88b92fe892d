//! Evaluation of terms and statements in a finite near-domain.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::term::{Statement, Term};
use crate::tables::{Element, NearDomain, ONE, ZERO};
use crate::Rational;

pub type Env = BTreeMap<String, Element>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroundError {
    #[error("inverse of zero in `{0}`")]
    InverseOfZero(String),
    #[error("rational {0} has no image in a finite model")]
    NotAnInteger(Rational),
    #[error("variable `{0}` is unbound")]
    Unbound(String),
}

fn integer(nd: &NearDomain, m: &BigInt) -> Element {
    let p = BigInt::from(nd.characteristic());
    let r = ((m % &p) + &p) % &p;
    nd.integer(r.to_u64().expect("reduced below the characteristic"))
}

/// Integers map to sums of 1; anything else is an error.
pub fn eval_term(t: &Term, nd: &NearDomain, env: &Env) -> Result<Element, GroundError> {
    Ok(match t {
        Term::Zero => ZERO,
        Term::One => ONE,
        Term::Rat(q) if q.is_integer() => integer(nd, q.numer()),
        Term::Rat(q) => return Err(GroundError::NotAnInteger(q.clone())),
        Term::Var(v) => *env.get(v).ok_or_else(|| GroundError::Unbound(v.clone()))?,
        Term::Add(a, b) => nd.add(eval_term(a, nd, env)?, eval_term(b, nd, env)?),
        Term::Mul(a, b) => nd.mul(eval_term(a, nd, env)?, eval_term(b, nd, env)?),
        Term::Neg(a) => nd.neg(eval_term(a, nd, env)?),
        Term::Inv(a) => nd
            .inv(eval_term(a, nd, env)?)
            .ok_or_else(|| GroundError::InverseOfZero(t.to_string()))?,
        Term::D(a, b) => nd.d(eval_term(a, nd, env)?, eval_term(b, nd, env)?),
    })
}

/// Truth of `s` in `nd` under `env`.
pub fn ground_check(s: &Statement, nd: &NearDomain, env: &Env) -> Result<bool, GroundError> {
    let ev = |t: &Term| eval_term(t, nd, env);
    Ok(match s {
        Statement::Eq(a, b) => ev(a)? == ev(b)?,
        Statement::InE(a) => nd.in_e(ev(a)?),
        Statement::DTrivial(a, b) => nd.d(ev(a)?, ev(b)?) == ONE,
        Statement::Nonzero(a) => ev(a)? != ZERO,
    })
}
