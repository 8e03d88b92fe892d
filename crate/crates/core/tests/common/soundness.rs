//! Grounding every rule in a finite model.

use neardomain::verify::{
    check_derivation, ground_check, parse_derivation, parse_term, Env, Rule, Statement, Term,
    ALL_RULES,
};
use neardomain::NearDomain;

pub struct Soundness {
    pub instances: u64,
    pub counterexamples: Vec<String>,
}

fn envs(vars: &[String], n: usize) -> Vec<Env> {
    let mut out = vec![Env::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..n).map(move |x| {
                    let mut e = e.clone();
                    e.insert(v.clone(), x);
                    e
                })
            })
            .collect();
    }
    out
}

/// `Some(true)` when every statement holds, `None` when one cannot be
/// evaluated.
fn all_hold(stmts: &[Statement], nd: &NearDomain, env: &Env) -> Option<bool> {
    let mut all = true;
    for s in stmts {
        all &= ground_check(s, nd, env).ok()?;
    }
    Some(all)
}

fn schema_rules(nd: &NearDomain, out: &mut Soundness) {
    for rule in ALL_RULES {
        for schema in rule.schemas() {
            let mut premises = schema.premises.clone();
            if rule == Rule::D1FromComm {
                premises.push(Statement::Nonzero(Term::add(
                    Term::var("b"),
                    Term::var("a"),
                )));
            }
            let mut vars: Vec<String> = premises
                .iter()
                .chain([&schema.conclusion])
                .flat_map(|s| s.vars().into_iter().map(str::to_string).collect::<Vec<_>>())
                .collect();
            vars.sort();
            vars.dedup();
            for env in envs(&vars, nd.order()) {
                if all_hold(&premises, nd, &env) != Some(true) {
                    continue;
                }
                let Ok(holds) = ground_check(&schema.conclusion, nd, &env) else {
                    continue;
                };
                out.instances += 1;
                if !holds {
                    out.counterexamples.push(format!(
                        "{}: {rule} `{}` under {env:?}",
                        nd.label(),
                        schema.conclusion
                    ));
                }
            }
        }
    }
}

fn accepted(script: &str) -> bool {
    check_derivation(&parse_derivation(script).unwrap()).accepted()
}

fn rat_rule(nd: &NearDomain, out: &mut Soundness) {
    let ints: Vec<i64> = (-6..=6).collect();
    for &p in &ints {
        for &q in &ints {
            let (tp, tq) = (Term::int(p), Term::int(q));
            let mut claims = vec![
                Statement::eq(Term::add(tp.clone(), tq.clone()), Term::int(p + q)),
                Statement::eq(Term::mul(tp.clone(), tq.clone()), Term::int(p * q)),
                Statement::eq(Term::neg(tp.clone()), Term::int(-p)),
                Statement::eq(
                    Term::add(tp.clone(), tq.clone()),
                    Term::add(tq.clone(), tp.clone()),
                ),
                Statement::DTrivial(tp.clone(), tq.clone()),
                Statement::InE(Term::add(tp.clone(), tq.clone())),
            ];
            if p != 0 {
                claims.push(Statement::eq(
                    Term::mul(tp.clone(), Term::inv(tp.clone())),
                    Term::One,
                ));
                claims.push(Statement::eq(
                    Term::mul(Term::inv(tp.clone()), Term::int(p * q)),
                    tq.clone(),
                ));
            }
            for claim in claims {
                assert!(
                    accepted(&format!("step {claim} by rat\n")),
                    "rat rejects {claim}"
                );
                let Ok(holds) = ground_check(&claim, nd, &Env::new()) else {
                    continue;
                };
                out.instances += 1;
                if !holds {
                    out.counterexamples
                        .push(format!("{}: rat `{claim}`", nd.label()));
                }
            }
        }
    }
}

fn subst_rule(nd: &NearDomain, out: &mut Soundness) {
    let corpus: Vec<Term> = [
        "a",
        "b",
        "a + b",
        "b + a",
        "a * b",
        "d(a, b)",
        "-a + c",
        "c * (a + b)^-1",
    ]
    .iter()
    .map(|s| parse_term(s).unwrap())
    .collect();
    let vars = ["a".to_string(), "b".to_string(), "c".to_string()];
    let all_envs = envs(&vars, nd.order());
    for t1 in &corpus {
        for t2 in &corpus {
            let target = Statement::eq(Term::add(t1.clone(), Term::One), t2.clone());
            for (path, sub) in target.positions() {
                for r in &corpus {
                    let equation = Statement::eq(sub.clone(), r.clone());
                    let Some(result) = target.replace(&path, r) else {
                        continue;
                    };
                    let pos: Vec<String> = path.iter().map(usize::to_string).collect();
                    let script = format!(
                        "var a, b, c\nassume {target}\nassume {equation}\nstep {result} by subst from 1, 2 at {}\n",
                        pos.join(".")
                    );
                    if matches!(equation, Statement::Eq(..)) && !accepted(&script) {
                        out.counterexamples
                            .push(format!("subst rejects a valid rewrite: {script}"));
                        continue;
                    }
                    for env in &all_envs {
                        if all_hold(&[equation.clone(), target.clone()], nd, env) != Some(true) {
                            continue;
                        }
                        let Ok(holds) = ground_check(&result, nd, env) else {
                            continue;
                        };
                        out.instances += 1;
                        if !holds {
                            out.counterexamples
                                .push(format!("{}: subst `{result}` under {env:?}", nd.label()));
                        }
                    }
                }
            }
        }
    }
}

/// Every rule, grounded over every admissible tuple of `nd`.
pub fn check_rules(nd: &NearDomain) -> Soundness {
    let mut out = Soundness {
        instances: 0,
        counterexamples: Vec::new(),
    };
    schema_rules(nd, &mut out);
    rat_rule(nd, &mut out);
    subst_rule(nd, &mut out);
    out
}
