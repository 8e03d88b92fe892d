//! Generators for the shipped derivation scripts.

use num_bigint::BigInt;

use super::parse::{Derivation, Item, ItemKind, Step};
use super::rules::Rule;
use super::term::{Statement, Term};
use crate::Rational;

fn assume(s: Statement) -> Item {
    Item {
        statement: s,
        kind: ItemKind::Assume,
        line: 0,
    }
}

fn nonzero(t: Term) -> Item {
    Item {
        statement: Statement::Nonzero(t),
        kind: ItemKind::Nonzero,
        line: 0,
    }
}

fn step(s: Statement, rule: Rule, premises: &[usize], at: Option<&[usize]>) -> Item {
    Item {
        statement: s,
        kind: ItemKind::Step(Step {
            rule,
            with: Vec::new(),
            premises: premises.to_vec(),
            at: at.map(<[usize]>::to_vec),
        }),
        line: 0,
    }
}

/// From `d(a, 1/k) = 1` and `d(a, n/k) = 1` derive `d(a, (n+1)/k) = 1`,
/// with the two sums the argument divides by assumed nonzero.
pub fn lemma3(n: i64, k: i64) -> Derivation {
    let a = || Term::var("a");
    let big_n = || Term::ratio(n, k);
    let o = || Term::ratio(1, k);
    let m = || Term::ratio(n + 1, k);
    let add = Term::add;
    let eq = Statement::eq;
    let items = vec![
        assume(Statement::DTrivial(a(), o())),
        assume(Statement::DTrivial(a(), big_n())),
        nonzero(add(a(), big_n())),
        nonzero(add(m(), a())),
        // 5
        step(eq(m(), add(big_n(), o())), Rule::Rat, &[], None),
        step(Statement::DTrivial(big_n(), o()), Rule::Rat, &[], None),
        step(
            eq(add(big_n(), add(o(), a())), add(add(big_n(), o()), a())),
            Rule::AssocFromD1,
            &[6],
            None,
        ),
        step(
            eq(add(big_n(), add(o(), a())), add(m(), a())),
            Rule::Subst,
            &[7, 5],
            Some(&[2, 1]),
        ),
        step(
            eq(add(o(), a()), add(a(), o())),
            Rule::CommFromD1,
            &[1],
            None,
        ),
        // 10
        step(
            eq(add(big_n(), add(a(), o())), add(m(), a())),
            Rule::Subst,
            &[8, 9],
            Some(&[1, 2]),
        ),
        step(
            eq(add(big_n(), a()), add(a(), big_n())),
            Rule::CommFromD1,
            &[2],
            None,
        ),
        step(
            Statement::DTrivial(big_n(), a()),
            Rule::D1FromComm,
            &[11],
            None,
        ),
        step(
            eq(add(big_n(), add(a(), o())), add(add(big_n(), a()), o())),
            Rule::AssocFromD1,
            &[12],
            None,
        ),
        step(
            eq(add(m(), a()), add(add(big_n(), a()), o())),
            Rule::Subst,
            &[10, 13],
            Some(&[1]),
        ),
        // 15
        step(
            eq(add(m(), a()), add(add(a(), big_n()), o())),
            Rule::Subst,
            &[14, 11],
            Some(&[2, 1]),
        ),
        step(
            eq(add(a(), add(big_n(), o())), add(add(a(), big_n()), o())),
            Rule::AssocFromD1,
            &[2],
            None,
        ),
        step(
            eq(add(m(), a()), add(a(), add(big_n(), o()))),
            Rule::Subst,
            &[15, 16],
            Some(&[2]),
        ),
        step(
            eq(add(m(), a()), add(a(), m())),
            Rule::Subst,
            &[17, 5],
            Some(&[2, 2]),
        ),
        step(Statement::DTrivial(a(), m()), Rule::D1FromComm, &[18], None),
    ];
    Derivation {
        vars: vec!["a".into()],
        items,
        goal: Some(Statement::DTrivial(a(), m())),
    }
}

fn cocycle_chain(first: Item, a: Term, i: Term, j: Term) -> Vec<Item> {
    let dij = || {
        Term::mul(
            Term::d(a.clone(), j.clone()),
            Term::d(
                Term::add(j.clone(), a.clone()),
                Term::add(Term::neg(j.clone()), i.clone()),
            ),
        )
    };
    let dai = || Term::d(a.clone(), i.clone());
    let mut cocycle = step(
        Statement::eq(
            dai(),
            Term::mul(dij(), Term::d(Term::neg(j.clone()), i.clone())),
        ),
        Rule::Cocycle,
        &[],
        None,
    );
    if let ItemKind::Step(s) = &mut cocycle.kind {
        s.with.push(("c".into(), j.clone()));
    }
    vec![
        first,
        cocycle,
        step(
            Statement::eq(dai(), Term::mul(dij(), Term::One)),
            Rule::Subst,
            &[2, 1],
            Some(&[2, 2]),
        ),
        step(
            Statement::eq(Term::mul(dij(), Term::One), dij()),
            Rule::AxGroup,
            &[],
            None,
        ),
        step(
            Statement::eq(dai(), dij()),
            Rule::Subst,
            &[3, 4],
            Some(&[2]),
        ),
    ]
}

/// From `d(-j, i) = 1` derive `d(a, i) = d(a, j) d(j + a, -j + i)`.
pub fn prop4_cocycle() -> Derivation {
    let (a, i, j) = (Term::var("a"), Term::var("i"), Term::var("j"));
    let first = assume(Statement::DTrivial(Term::neg(j.clone()), i.clone()));
    let items = cocycle_chain(first, a.clone(), i.clone(), j.clone());
    let goal = items.last().expect("nonempty").statement.clone();
    Derivation {
        vars: vec!["a".into(), "i".into(), "j".into()],
        items,
        goal: Some(goal),
    }
}

/// The same identity for the constants `i/n!` and `j/n!`, where
/// `d(-j/n!, i/n!) = 1` is a fact about rationals.
pub fn prop4_factorial(n: u32, i: i64, j: i64) -> Derivation {
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let c = |m: i64| Term::constant(Rational::new(m.into(), fact.clone()));
    let (a, ti, tj) = (Term::var("a"), c(i), c(j));
    let first = step(
        Statement::DTrivial(Term::neg(tj.clone()), ti.clone()),
        Rule::Rat,
        &[],
        None,
    );
    let items = cocycle_chain(first, a, ti, tj);
    let goal = items.last().expect("nonempty").statement.clone();
    Derivation {
        vars: vec!["a".into()],
        items,
        goal: Some(goal),
    }
}

/// File name and contents of every shipped script.
pub fn shipped() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for k in 1..=3 {
            let header = format!(
                "# d(a, {}) = 1 and d(a, {}) = 1 give d(a, {}) = 1\n",
                Term::ratio(1, k),
                Term::ratio(n, k),
                Term::ratio(n + 1, k)
            );
            out.push((
                format!("lemma3_n{n}_k{k}.ndp"),
                header + &lemma3(n, k).to_string(),
            ));
        }
    }
    out.push((
        "prop4_cocycle.ndp".into(),
        "# d(-j, i) = 1 gives d(a, i) = d(a, j) * d(j + a, -j + i)\n".to_string()
            + &prop4_cocycle().to_string(),
    ));
    out.push((
        "prop4_n3.ndp".into(),
        "# the same with i = 2/3!, j = 1/3!\n".to_string() + &prop4_factorial(3, 2, 1).to_string(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{check_derivation, parse_derivation};

    #[test]
    fn generated_scripts_are_accepted() {
        for n in 1..=3 {
            for k in 1..=3 {
                let v = check_derivation(&lemma3(n, k));
                assert!(v.accepted(), "n={n} k={k}: {v}");
                assert_eq!(v.steps_checked, 15);
            }
        }
        for d in [
            prop4_cocycle(),
            prop4_factorial(3, 2, 1),
            prop4_factorial(5, 7, 3),
        ] {
            let v = check_derivation(&d);
            assert!(v.accepted(), "{v}\n{d}");
        }
    }

    #[test]
    fn printed_scripts_reparse() {
        for (name, text) in shipped() {
            let d = parse_derivation(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(check_derivation(&d).accepted(), "{name}");
        }
    }

    #[test]
    fn shipped_files_match_generator() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts");
        for (name, text) in shipped() {
            let on_disk =
                std::fs::read_to_string(dir.join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(on_disk, text, "{name}");
        }
    }
}
