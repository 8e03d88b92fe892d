//! Step checking.

use std::fmt;

use num_traits::Zero;

use super::parse::{Derivation, Item, ItemKind, Step};
use super::rules::{instantiate_statement, match_statement, Bindings, Rule};
use super::term::{Statement, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// Item number of the failing step; `None` for the `qed` goal.
    pub item: Option<usize>,
    pub line: usize,
    pub rule: Option<Rule>,
    pub reason: String,
    pub expected: Option<Statement>,
    pub claimed: Statement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub steps_checked: usize,
    pub rejection: Option<Rejection>,
    /// One line per accepted item.
    pub trace: Vec<String>,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.rejection.is_none()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(r) = &self.rejection else {
            return write!(f, "accepted ({} steps)", self.steps_checked);
        };
        match (r.item, r.rule) {
            (Some(n), Some(rule)) => write!(
                f,
                "rejected at item {n} (line {}, {rule}): {}",
                r.line, r.reason
            )?,
            (Some(n), None) => write!(f, "rejected at item {n} (line {}): {}", r.line, r.reason)?,
            (None, _) => write!(f, "rejected at qed: {}", r.reason)?,
        }
        if let Some(e) = &r.expected {
            write!(f, "\n  expected: {e}")?;
        }
        write!(f, "\n  claimed:  {}", r.claimed)
    }
}

struct Fail {
    reason: String,
    expected: Option<Box<Statement>>,
}

fn fail<T>(reason: impl Into<String>) -> Result<T, Fail> {
    Err(Fail {
        reason: reason.into(),
        expected: None,
    })
}

fn is_nonzero(t: &Term, alt: &Term, earlier: &[Item]) -> bool {
    t.eval_constant().is_some_and(|q| !q.is_zero())
        || earlier
            .iter()
            .any(|i| matches!(&i.statement, Statement::Nonzero(s) if s == t || s == alt))
}

/// `env` extended with whatever the claim suggests for the unbound
/// metavariables, for showing an expected statement.
fn complete(pat: &Statement, claim: &Statement, env: &Bindings) -> Bindings {
    fn walk(p: &Term, t: &Term, b: &mut Bindings) {
        match p {
            Term::Var(v) => {
                b.entry(v.clone()).or_insert_with(|| t.clone());
            }
            _ if std::mem::discriminant(p) == std::mem::discriminant(t) => {
                for (pc, tc) in p.children().into_iter().zip(t.children()) {
                    walk(pc, tc, b);
                }
            }
            _ => {}
        }
    }
    let mut b = env.clone();
    for (p, t) in pat.terms().into_iter().zip(claim.terms()) {
        walk(p, t, &mut b);
    }
    b
}

fn check_rat(claim: &Statement) -> Result<(), Fail> {
    let closed = |t: &Term| t.eval_constant();
    let ok = match claim {
        Statement::Eq(l, r) => match (closed(l), closed(r)) {
            (Some(p), Some(q)) if p == q => true,
            (Some(p), Some(q)) => return fail(format!("sides evaluate to {p} and {q}")),
            _ => false,
        },
        Statement::DTrivial(a, b) => closed(a).is_some() && closed(b).is_some(),
        Statement::InE(a) => closed(a).is_some(),
        Statement::Nonzero(a) => closed(a).is_some_and(|q| !q.is_zero()),
    };
    if ok {
        Ok(())
    } else {
        fail("not a statement about rational constants")
    }
}

fn check_subst(claim: &Statement, step: &Step, premises: &[&Statement]) -> Result<(), Fail> {
    let [target, equation] = premises else {
        return fail(format!("subst takes 2 premises, got {}", premises.len()));
    };
    let Some(path) = &step.at else {
        return fail("subst needs a position (`at`)");
    };
    let Some((l, r)) = equation.as_equation() else {
        return fail("second premise is not an equation");
    };
    let pos: Vec<String> = path.iter().map(usize::to_string).collect();
    let pos = pos.join(".");
    let Some(sub) = target.subterm(path) else {
        return fail(format!("no subterm at {pos} in `{target}`"));
    };
    let with = if *sub == l {
        &r
    } else if *sub == r {
        &l
    } else {
        return fail(format!(
            "subterm `{sub}` at {pos} is neither side of `{equation}`"
        ));
    };
    let result = target.replace(path, with).expect("position exists");
    if result.same_as(claim) {
        Ok(())
    } else {
        Err(Fail {
            reason: "claim is not the rewritten premise".into(),
            expected: Some(Box::new(result)),
        })
    }
}

fn check_schema(
    rule: Rule,
    claim: &Statement,
    step: &Step,
    premises: &[&Statement],
    earlier: &[Item],
) -> Result<(), Fail> {
    let metas = rule.metavariables();
    let mut init = Bindings::new();
    for (v, t) in &step.with {
        if !metas.contains(v) {
            return fail(format!("{rule} has no variable `{v}`"));
        }
        init.insert(v.clone(), t.clone());
    }
    let schemas = rule.schemas();
    // keep the most specific failure: arity < premises < conclusion < side condition
    let note = |f: Fail, rank: u8, best: &mut Option<(u8, Fail)>| {
        if best.as_ref().is_none_or(|(r, _)| rank > *r) {
            *best = Some((rank, f));
        }
    };
    let mut ranked: Option<(u8, Fail)> = None;
    for schema in &schemas {
        if schema.premises.len() != premises.len() {
            note(
                Fail {
                    reason: format!(
                        "{rule} takes {} premises, got {}",
                        schema.premises.len(),
                        premises.len()
                    ),
                    expected: None,
                },
                0,
                &mut ranked,
            );
            continue;
        }
        let mut envs = vec![init.clone()];
        for (p, s) in schema.premises.iter().zip(premises) {
            envs = envs.iter().flat_map(|e| match_statement(p, s, e)).collect();
        }
        if envs.is_empty() {
            let wanted: Vec<String> = schema.premises.iter().map(ToString::to_string).collect();
            note(
                Fail {
                    reason: format!("premises do not match `{}`", wanted.join("`, `")),
                    expected: None,
                },
                1,
                &mut ranked,
            );
            continue;
        }
        for env in &envs {
            let matches = match_statement(&schema.conclusion, claim, env);
            for m in &matches {
                if rule != Rule::D1FromComm {
                    return Ok(());
                }
                let ba = Term::add(m["b"].clone(), m["a"].clone());
                let ab = Term::add(m["a"].clone(), m["b"].clone());
                if is_nonzero(&ba, &ab, earlier) {
                    return Ok(());
                }
                note(
                    Fail {
                        reason: format!("side condition: cannot show `{ba}` is nonzero"),
                        expected: None,
                    },
                    3,
                    &mut ranked,
                );
            }
            if matches.is_empty() {
                note(
                    Fail {
                        reason: format!("claim does not match `{}`", schema.conclusion),
                        expected: instantiate_statement(
                            &schema.conclusion,
                            &complete(&schema.conclusion, claim, env),
                        )
                        .map(Box::new),
                    },
                    2,
                    &mut ranked,
                );
            }
        }
    }
    Err(ranked.map(|(_, f)| f).unwrap_or(Fail {
        reason: format!("{rule} has no schema"),
        expected: None,
    }))
}

fn check_step(items: &[Item], index: usize, claim: &Statement, step: &Step) -> Result<(), Fail> {
    let earlier = &items[..index];
    let mut premises = Vec::with_capacity(step.premises.len());
    for &p in &step.premises {
        match p.checked_sub(1).and_then(|i| earlier.get(i)) {
            Some(item) => premises.push(&item.statement),
            None => return fail(format!("premise {p} is not an earlier item")),
        }
    }
    match step.rule {
        Rule::Rat | Rule::Subst if !step.with.is_empty() => {
            fail(format!("{} takes no `with`", step.rule))
        }
        Rule::Rat if !premises.is_empty() => fail("rat takes no premises"),
        Rule::Rat => check_rat(claim),
        Rule::Subst => check_subst(claim, step, &premises),
        rule => check_schema(rule, claim, step, &premises, earlier),
    }
}

/// Checks every step in order and then the `qed` goal. The verdict names
/// the first failure.
pub fn check_derivation(d: &Derivation) -> Verdict {
    let mut verdict = Verdict {
        steps_checked: 0,
        rejection: None,
        trace: Vec::new(),
    };
    for (index, item) in d.items.iter().enumerate() {
        let n = index + 1;
        let Item {
            statement,
            kind,
            line,
        } = item;
        let step = match kind {
            ItemKind::Assume => {
                verdict
                    .trace
                    .push(format!("{n:>3}  {statement}  [assumption]"));
                continue;
            }
            ItemKind::Nonzero => {
                verdict
                    .trace
                    .push(format!("{n:>3}  {statement}  [side condition]"));
                continue;
            }
            ItemKind::Step(step) => step,
        };
        if let Err(f) = check_step(&d.items, index, statement, step) {
            verdict.rejection = Some(Rejection {
                item: Some(n),
                line: *line,
                rule: Some(step.rule),
                reason: f.reason,
                expected: f.expected.map(|e| *e),
                claimed: statement.clone(),
            });
            return verdict;
        }
        verdict.steps_checked += 1;
        let from: Vec<String> = step.premises.iter().map(usize::to_string).collect();
        let from = if from.is_empty() {
            String::new()
        } else {
            format!(" from {}", from.join(", "))
        };
        verdict
            .trace
            .push(format!("{n:>3}  {statement}  [{}{from}]", step.rule));
    }
    if let Some(goal) = &d.goal {
        if d.items.iter().any(|i| i.statement.same_as(goal)) {
            verdict.trace.push(format!("qed  {goal}"));
        } else {
            verdict.rejection = Some(Rejection {
                item: None,
                line: 0,
                rule: None,
                reason: "goal was not established".into(),
                expected: None,
                claimed: goal.clone(),
            });
        }
    }
    verdict
}
