//! Checker for equational derivations over near-domain terms with rational
//! constants.
//!
//! A derivation is a list of assumptions and steps; each step names a rule
//! and cites earlier items. [`check_derivation`] accepts a derivation when
//! every step is an instance of its rule. [`ground_check`] evaluates
//! statements in a finite model, which is how the rules are tested for
//! soundness.

mod check;
mod ground;
pub mod mutate;
mod parse;
mod rules;
pub mod scripts;
mod term;

pub use check::{check_derivation, Rejection, Verdict};
pub use ground::{eval_term, ground_check, Env, GroundError};
pub use parse::{
    parse_derivation, parse_statement, parse_term, Derivation, Item, ItemKind, ParseError, Step,
};
pub use rules::{
    instantiate_statement, match_statement, Bindings, Rule, Schema, UnknownRule, ALL_RULES,
};
pub use term::{Statement, Term};
