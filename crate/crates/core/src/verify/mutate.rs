//! Single-step mutations of a derivation, for testing that the checker
//! rejects broken proofs.

use super::parse::{Derivation, ItemKind};
use super::rules::{Rule, ALL_RULES};
use super::term::{Statement, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationKind {
    RuleSwap,
    PremiseSwap,
    TermPerturbation,
}

#[derive(Debug, Clone)]
pub struct Mutation {
    pub kind: MutationKind,
    /// Item number of the mutated step.
    pub item: usize,
    pub description: String,
    pub derivation: Derivation,
}

/// Whether `rule` alone justifies `claim`, making a swap to it a valid
/// alternative proof rather than a mutation.
fn trivially_justifies(rule: Rule, claim: &Statement) -> bool {
    match (rule, claim) {
        (Rule::DAa, Statement::DTrivial(a, b)) => a == b,
        (Rule::Rat, s) => s.terms().iter().all(|t| t.eval_constant().is_some()),
        _ => false,
    }
}

/// Every rule swap, premise swap and leaf perturbation of every step.
/// Swaps that yield an equally valid step are left out.
pub fn mutations(d: &Derivation) -> Vec<Mutation> {
    let mut out = Vec::new();
    for (index, item) in d.items.iter().enumerate() {
        let ItemKind::Step(step) = &item.kind else {
            continue;
        };
        let n = index + 1;
        let mut push = |kind, description: String, f: &dyn Fn(&mut Derivation)| {
            let mut m = d.clone();
            f(&mut m);
            out.push(Mutation {
                kind,
                item: n,
                description,
                derivation: m,
            });
        };
        for rule in ALL_RULES {
            if rule == step.rule || trivially_justifies(rule, &item.statement) {
                continue;
            }
            push(
                MutationKind::RuleSwap,
                format!("item {n}: {} -> {rule}", step.rule),
                &|m| {
                    if let ItemKind::Step(s) = &mut m.items[index].kind {
                        s.rule = rule;
                    }
                },
            );
        }
        for (slot, &p) in step.premises.iter().enumerate() {
            for q in 1..n {
                if q == p || d.items[q - 1].statement == d.items[p - 1].statement {
                    continue;
                }
                push(
                    MutationKind::PremiseSwap,
                    format!("item {n}: premise {p} -> {q}"),
                    &|m| {
                        if let ItemKind::Step(s) = &mut m.items[index].kind {
                            s.premises[slot] = q;
                        }
                    },
                );
            }
        }
        for (path, t) in item.statement.positions() {
            if !t.children().is_empty() {
                continue;
            }
            let bumped = Term::add(t.clone(), Term::One);
            let Some(changed) = item.statement.replace(&path, &bumped) else {
                continue;
            };
            let pos: Vec<String> = path.iter().map(usize::to_string).collect();
            push(
                MutationKind::TermPerturbation,
                format!("item {n}: `{t}` -> `{bumped}` at {}", pos.join(".")),
                &|m| m.items[index].statement = changed.clone(),
            );
        }
    }
    out
}
