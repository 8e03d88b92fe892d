//! Finite near-domain models.
//!
//! A [`NearDomainTable`] is a pair of dense `n x n` operation tables over the
//! carrier `0..n`, with index 0 the additive identity and index 1 the
//! multiplicative identity. Structural well-formedness is checked on
//! construction; the near-domain axioms are checked by
//! [`check_near_domain`], and a table that passes them is wrapped in a
//! [`NearDomain`], which carries the derived data (inverses, negatives,
//! d-coefficients) every other module consumes.

pub(crate) mod format;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// An element of a finite carrier, as a dense index.
pub type Element = usize;

pub const ZERO: Element = 0;
pub const ONE: Element = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("{table} table has {found} rows, expected {expected}")]
    RowCount {
        table: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("{table} table row {row} has {found} entries, expected {expected}")]
    RowLength {
        table: &'static str,
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("{table}[{row}][{col}] = {value} is out of range for order {order}")]
    EntryOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("element {element} is out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("not a near-domain: {0}")]
    NotNearDomain(Box<AxiomReport>),
    #[error("no d-coefficient for ({a}, {b}): not a near-domain")]
    NoDCoefficient { a: Element, b: Element },
    #[error("quotient undefined for ({a}, {b}): b + a = 0")]
    QuotientUndefined { a: Element, b: Element },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// The four defining axioms of a near-domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `(K, 0, +)` is a loop.
    Loop,
    /// `(K \ {0}, 1, .)` is a group and 0 is absorbing.
    Group,
    /// `a(b + c) = ab + ac`.
    LeftDistributivity,
    /// `a + (b + x) = (a + b) + d(a,b) x` for some `d(a,b)`.
    DCoefficient,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Loop => "loop",
            Axiom::Group => "group",
            Axiom::LeftDistributivity => "left-distributivity",
            Axiom::DCoefficient => "d-coefficient",
        })
    }
}

/// One failed clause of an axiom with the lexicographically first tuple
/// violating it.
///
/// Witness layouts per clause:
/// - `identity`: `[a]`, `a + 0 != a` or `0 + a != a` (loop); `1a != a` or
///   `a1 != a` (group)
/// - `row`: `[a, x1, x2]` with `a + x1 = a + x2`
/// - `column`: `[y1, y2, a]` with `y1 + a = y2 + a`
/// - `zero`: `[a]` with `a0 != 0` or `0a != 0`
/// - `closure`: `[a, b]` nonzero with `ab = 0`
/// - `inverse`: `[a]` with no two-sided inverse
/// - `associativity`: `[a, b, c]` with `(ab)c != a(bc)`
/// - `distributivity`: `[a, b, c]` with `a(b + c) != ab + ac`
/// - `no-d`: `[a, b]` with no `d` satisfying the equation for every `x`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: Axiom,
    pub clause: &'static str,
    pub witness: Vec<Element>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}) witness {:?}",
            self.axiom, self.clause, self.witness
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub loop_ok: bool,
    pub group_ok: bool,
    pub left_dist_ok: bool,
    pub axiom4_ok: bool,
    pub failures: Vec<Failure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self, axiom: Axiom) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return f.write_str("all axioms hold");
        }
        let parts: Vec<String> = self.failures.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// A structurally well-formed pair of operation tables.
///
/// Tables are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NearDomainTable {
    order: usize,
    add: Vec<Element>,
    mul: Vec<Element>,
    label: String,
}

impl NearDomainTable {
    pub fn new(
        add: Vec<Vec<Element>>,
        mul: Vec<Vec<Element>>,
        label: impl Into<String>,
    ) -> Result<Self, TableError> {
        let order = add.len();
        if order < 2 {
            return Err(TableError::OrderTooSmall(order));
        }
        let add = flatten("add", add, order)?;
        let mul = flatten("mul", mul, order)?;
        Ok(NearDomainTable {
            order,
            add,
            mul,
            label: label.into(),
        })
    }

    /// Builds a table from row-major flat storage.
    pub fn from_flat(
        order: usize,
        add: Vec<Element>,
        mul: Vec<Element>,
        label: impl Into<String>,
    ) -> Result<Self, TableError> {
        if order < 2 {
            return Err(TableError::OrderTooSmall(order));
        }
        for (name, data) in [("add", &add), ("mul", &mul)] {
            if data.len() != order * order {
                return Err(TableError::RowCount {
                    table: name,
                    found: data.len() / order,
                    expected: order,
                });
            }
            if let Some(pos) = data.iter().position(|&v| v >= order) {
                return Err(TableError::EntryOutOfRange {
                    table: name,
                    row: pos / order,
                    col: pos % order,
                    value: data[pos],
                    order,
                });
            }
        }
        Ok(NearDomainTable {
            order,
            add,
            mul,
            label: label.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mul[a * self.order + b]
    }

    pub fn add_flat(&self) -> &[Element] {
        &self.add
    }

    pub fn mul_flat(&self) -> &[Element] {
        &self.mul
    }

    pub fn add_rows(&self) -> Vec<Vec<Element>> {
        self.add.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    pub fn mul_rows(&self) -> Vec<Vec<Element>> {
        self.mul.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    pub fn check_element(&self, element: Element) -> Result<Element, TableError> {
        if element < self.order {
            Ok(element)
        } else {
            Err(TableError::ElementOutOfRange {
                element,
                order: self.order,
            })
        }
    }

    /// Transports the table along `perm`, which must fix 0 and 1: the
    /// result has `add'[perm a][perm b] = perm(add[a][b])`.
    pub fn relabel(&self, perm: &[Element]) -> NearDomainTable {
        let n = self.order;
        debug_assert_eq!(perm.len(), n);
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)];
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        NearDomainTable {
            order: n,
            add,
            mul,
            label: self.label.clone(),
        }
    }

    /// Checks the axioms and wraps the table on success.
    pub fn into_near_domain(self) -> Result<NearDomain, TableError> {
        NearDomain::new(self)
    }
}

fn flatten(
    name: &'static str,
    rows: Vec<Vec<Element>>,
    order: usize,
) -> Result<Vec<Element>, TableError> {
    if rows.len() != order {
        return Err(TableError::RowCount {
            table: name,
            found: rows.len(),
            expected: order,
        });
    }
    let mut flat = Vec::with_capacity(order * order);
    for (r, row) in rows.into_iter().enumerate() {
        if row.len() != order {
            return Err(TableError::RowLength {
                table: name,
                row: r,
                found: row.len(),
                expected: order,
            });
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= order {
                return Err(TableError::EntryOutOfRange {
                    table: name,
                    row: r,
                    col: c,
                    value: v,
                    order,
                });
            }
        }
        flat.extend(row);
    }
    Ok(flat)
}

/// Verifies axioms (1)-(4) and reports the first violating tuple of every
/// failed clause.
pub fn check_near_domain(t: &NearDomainTable) -> AxiomReport {
    let mut failures = Vec::new();
    check_loop(t, &mut failures);
    check_group(t, &mut failures);
    check_left_distributivity(t, &mut failures);
    check_axiom4(t, &mut failures);
    let has = |ax: Axiom| failures.iter().any(|f: &Failure| f.axiom == ax);
    AxiomReport {
        loop_ok: !has(Axiom::Loop),
        group_ok: !has(Axiom::Group),
        left_dist_ok: !has(Axiom::LeftDistributivity),
        axiom4_ok: !has(Axiom::DCoefficient),
        failures,
    }
}

fn check_loop(t: &NearDomainTable, failures: &mut Vec<Failure>) {
    let n = t.order;
    let push = |failures: &mut Vec<Failure>, clause, witness| {
        failures.push(Failure {
            axiom: Axiom::Loop,
            clause,
            witness,
        })
    };
    if let Some(a) = (0..n).find(|&a| t.add(a, ZERO) != a || t.add(ZERO, a) != a) {
        push(failures, "identity", vec![a]);
    }
    'rows: for a in 0..n {
        for x1 in 0..n {
            for x2 in x1 + 1..n {
                if t.add(a, x1) == t.add(a, x2) {
                    push(failures, "row", vec![a, x1, x2]);
                    break 'rows;
                }
            }
        }
    }
    'cols: for y1 in 0..n {
        for y2 in y1 + 1..n {
            for a in 0..n {
                if t.add(y1, a) == t.add(y2, a) {
                    push(failures, "column", vec![y1, y2, a]);
                    break 'cols;
                }
            }
        }
    }
}

fn check_group(t: &NearDomainTable, failures: &mut Vec<Failure>) {
    let n = t.order;
    let push = |failures: &mut Vec<Failure>, clause, witness| {
        failures.push(Failure {
            axiom: Axiom::Group,
            clause,
            witness,
        })
    };
    if let Some(a) = (0..n).find(|&a| t.mul(a, ZERO) != ZERO || t.mul(ZERO, a) != ZERO) {
        push(failures, "zero", vec![a]);
    }
    'closure: for a in 1..n {
        for b in 1..n {
            if t.mul(a, b) == ZERO {
                push(failures, "closure", vec![a, b]);
                break 'closure;
            }
        }
    }
    if let Some(a) = (1..n).find(|&a| t.mul(ONE, a) != a || t.mul(a, ONE) != a) {
        push(failures, "identity", vec![a]);
    }
    if let Some(a) = (1..n).find(|&a| !(1..n).any(|b| t.mul(a, b) == ONE && t.mul(b, a) == ONE)) {
        push(failures, "inverse", vec![a]);
    }
    'assoc: for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) {
                    push(failures, "associativity", vec![a, b, c]);
                    break 'assoc;
                }
            }
        }
    }
}

fn check_left_distributivity(t: &NearDomainTable, failures: &mut Vec<Failure>) {
    let n = t.order;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c)) {
                    failures.push(Failure {
                        axiom: Axiom::LeftDistributivity,
                        clause: "distributivity",
                        witness: vec![a, b, c],
                    });
                    return;
                }
            }
        }
    }
}

fn check_axiom4(t: &NearDomainTable, failures: &mut Vec<Failure>) {
    let n = t.order;
    for a in 0..n {
        for b in 0..n {
            if solve_d(t, a, b).is_none() {
                failures.push(Failure {
                    axiom: Axiom::DCoefficient,
                    clause: "no-d",
                    witness: vec![a, b],
                });
                return;
            }
        }
    }
}

/// Candidates for `d(a,b)` are the `d` with `(a+b) + d = a + (b + 1)`
/// (the equation at `x = 1`); each is then verified for every `x`.
fn solve_d(t: &NearDomainTable, a: Element, b: Element) -> Option<Element> {
    let n = t.order;
    let ab = t.add(a, b);
    let target = t.add(a, t.add(b, ONE));
    (0..n)
        .filter(|&d| t.add(ab, d) == target)
        .find(|&d| (0..n).all(|x| t.add(a, t.add(b, x)) == t.add(ab, t.mul(d, x))))
}

/// A table that satisfies the near-domain axioms, together with derived
/// lookup tables.
#[derive(Debug, Clone)]
pub struct NearDomain {
    table: NearDomainTable,
    inv: Vec<Element>,
    left_neg: Vec<Element>,
    right_neg: Vec<Element>,
    // ldiv[a * n + c] is the unique x with a + x = c
    ldiv: Vec<Element>,
    d: Vec<Element>,
}

impl NearDomain {
    pub fn new(table: NearDomainTable) -> Result<Self, TableError> {
        let report = check_near_domain(&table);
        if !report.passed() {
            return Err(TableError::NotNearDomain(Box::new(report)));
        }
        let n = table.order;
        let inv: Vec<Element> = (0..n)
            .map(|a| {
                if a == ZERO {
                    ZERO
                } else {
                    (1..n)
                        .find(|&b| table.mul(a, b) == ONE)
                        .expect("group axiom")
                }
            })
            .collect();
        let mut ldiv = vec![ZERO; n * n];
        let mut left_neg = vec![ZERO; n];
        let mut right_neg = vec![ZERO; n];
        for a in 0..n {
            for x in 0..n {
                ldiv[a * n + table.add(a, x)] = x;
                if table.add(x, a) == ZERO {
                    left_neg[a] = x;
                }
            }
            right_neg[a] = ldiv[a * n + ZERO];
        }
        let mut nd = NearDomain {
            table,
            inv,
            left_neg,
            right_neg,
            ldiv,
            d: Vec::new(),
        };
        let mut d = vec![ZERO; n * n];
        for a in 0..n {
            for b in 0..n {
                d[a * n + b] = nd.compute_d(a, b)?;
            }
        }
        nd.d = d;
        Ok(nd)
    }

    pub fn table(&self) -> &NearDomainTable {
        &self.table
    }

    pub fn into_table(self) -> NearDomainTable {
        self.table
    }

    pub fn order(&self) -> usize {
        self.table.order
    }

    pub fn label(&self) -> &str {
        self.table.label()
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        self.table.add(a, b)
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table.mul(a, b)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Element) -> Option<Element> {
        (a != ZERO).then(|| self.inv[a])
    }

    /// The unique `x` with `a + x = c`.
    #[inline]
    pub fn left_solve(&self, a: Element, c: Element) -> Element {
        self.ldiv[a * self.order() + c]
    }

    /// `(left, right)` with `left + a = 0` and `a + right = 0`.
    pub fn negatives(&self, a: Element) -> (Element, Element) {
        (self.left_neg[a], self.right_neg[a])
    }

    /// `-a`, taken to be the right negative.
    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        self.right_neg[a]
    }

    /// Solves `a + (b + x) = (a + b) + d x` at `x = 1` and verifies the
    /// solution against every `x`.
    pub fn compute_d(&self, a: Element, b: Element) -> Result<Element, TableError> {
        let n = self.order();
        let ab = self.add(a, b);
        let d = self.left_solve(ab, self.add(a, self.add(b, ONE)));
        if (0..n).all(|x| self.add(a, self.add(b, x)) == self.add(ab, self.mul(d, x))) {
            Ok(d)
        } else {
            Err(TableError::NoDCoefficient { a, b })
        }
    }

    /// The cached d-coefficient `d(a,b)`.
    #[inline]
    pub fn d(&self, a: Element, b: Element) -> Element {
        self.d[a * self.order() + b]
    }

    /// `(a + b)(b + a)^-1`.
    pub fn d_via_quotient(&self, a: Element, b: Element) -> Result<Element, TableError> {
        let ba = self.add(b, a);
        let inv = self.inv(ba).ok_or(TableError::QuotientUndefined { a, b })?;
        Ok(self.mul(self.add(a, b), inv))
    }

    /// `E = { d : 1 + d = d + 1 }`.
    pub fn e_set(&self) -> BTreeSet<Element> {
        (0..self.order())
            .filter(|&d| self.add(ONE, d) == self.add(d, ONE))
            .collect()
    }

    pub fn in_e(&self, d: Element) -> bool {
        self.add(ONE, d) == self.add(d, ONE)
    }

    /// Length of the cycle of `x -> a + x` through 0.
    pub fn additive_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut m = 1;
        while x != ZERO {
            x = self.add(a, x);
            m += 1;
        }
        m
    }

    /// Additive order of 1: the least `m > 0` with `1 + (1 + (... + 1)) = 0`.
    pub fn characteristic(&self) -> usize {
        self.additive_order(ONE)
    }

    /// The `m`-fold sum `1 + (1 + (...))`, reduced modulo the characteristic.
    pub fn integer(&self, m: u64) -> Element {
        let p = self.characteristic() as u64;
        (0..m % p).fold(ZERO, |acc, _| self.add(ONE, acc))
    }

    /// Order of a nonzero element in the multiplicative group; 0 for zero.
    pub fn multiplicative_order(&self, a: Element) -> usize {
        if a == ZERO {
            return 0;
        }
        let mut x = a;
        let mut m = 1;
        while x != ONE {
            x = self.mul(x, a);
            m += 1;
        }
        m
    }

    pub fn is_near_field(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n)
                .all(|b| (0..n).all(|c| self.add(self.add(a, b), c) == self.add(a, self.add(b, c))))
        })
    }

    pub fn multiplication_is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// First `(a, b, c)` with `(a + b)c != ac + bc`, if any.
    pub fn right_distributivity_witness(&self) -> Option<(Element, Element, Element)> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Exhaustively checks the standard d-coefficient identities over all
    /// applicable tuples.
    pub fn kerby_suite(&self) -> KerbyReport {
        let n = self.order();
        let mut checks = Vec::new();

        let mut c = IdentityCheck::new(KerbyIdentity::DiagonalTrivial);
        for a in 0..n {
            c.visit(self.d(a, a) == ONE, || vec![a]);
        }
        checks.push(c);

        let mut c = IdentityCheck::new(KerbyIdentity::Quotient);
        for a in 0..n {
            for b in 0..n {
                c.visit(
                    self.mul(self.d(a, b), self.add(b, a)) == self.add(a, b),
                    || vec![a, b],
                );
            }
        }
        checks.push(c);

        let mut c = IdentityCheck::new(KerbyIdentity::Conjugation);
        for a in 0..n {
            for b in 0..n {
                for k in 1..n {
                    let lhs = self.mul(self.mul(k, self.d(a, b)), self.inv[k]);
                    let rhs = self.d(self.mul(k, a), self.mul(k, b));
                    c.visit(lhs == rhs, || vec![a, b, k]);
                }
            }
        }
        checks.push(c);

        let mut c = IdentityCheck::new(KerbyIdentity::Cocycle);
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    let nk = self.neg(k);
                    let rhs = self.mul(
                        self.mul(self.d(a, k), self.d(self.add(k, a), self.add(nk, b))),
                        self.d(nk, b),
                    );
                    c.visit(self.d(a, b) == rhs, || vec![a, b, k]);
                }
            }
        }
        checks.push(c);

        let e = self.e_set();
        let mut c = IdentityCheck::new(KerbyIdentity::EDoubling);
        for &a in &e {
            for &b in &e {
                let s = self.add(a, b);
                // s * 2 = s * (1 + 1) = s + s by left distributivity
                c.visit(self.in_e(self.add(s, s)), || vec![a, b]);
            }
        }
        checks.push(c);

        let mut c = IdentityCheck::new(KerbyIdentity::FiniteCentralizer);
        for a in 0..n {
            for b in 0..n {
                c.visit(self.d(a, b) == ONE, || vec![a, b]);
            }
        }
        checks.push(c);

        let mut c = IdentityCheck::new(KerbyIdentity::NegativesAgree);
        for a in 0..n {
            c.visit(self.left_neg[a] == self.right_neg[a], || vec![a]);
        }
        checks.push(c);

        KerbyReport {
            label: self.label().to_string(),
            checks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KerbyIdentity {
    /// `d(a,a) = 1`
    DiagonalTrivial,
    /// `d(a,b)(b + a) = a + b`
    Quotient,
    /// `c d(a,b) c^-1 = d(ca, cb)` for `c != 0`
    Conjugation,
    /// `d(a,b) = d(a,c) d(c + a, -c + b) d(-c, b)`
    Cocycle,
    /// `a, b in E` implies `(a + b)2 in E`
    EDoubling,
    /// every `d(a,b) = 1`; a finite multiplicative group cannot contain an
    /// element whose centralizer has infinite index
    FiniteCentralizer,
    /// left and right negatives coincide
    NegativesAgree,
}

impl fmt::Display for KerbyIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KerbyIdentity::DiagonalTrivial => "d(a,a) = 1",
            KerbyIdentity::Quotient => "d(a,b)(b+a) = a+b",
            KerbyIdentity::Conjugation => "c d(a,b) c^-1 = d(ca,cb)",
            KerbyIdentity::Cocycle => "d(a,b) = d(a,c) d(c+a,-c+b) d(-c,b)",
            KerbyIdentity::EDoubling => "a,b in E => (a+b)2 in E",
            KerbyIdentity::FiniteCentralizer => "all d(a,b) = 1",
            KerbyIdentity::NegativesAgree => "left negative = right negative",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: KerbyIdentity,
    pub tuples_checked: u64,
    pub violation: Option<Vec<Element>>,
}

impl IdentityCheck {
    fn new(identity: KerbyIdentity) -> Self {
        IdentityCheck {
            identity,
            tuples_checked: 0,
            violation: None,
        }
    }

    fn visit(&mut self, ok: bool, witness: impl FnOnce() -> Vec<Element>) {
        self.tuples_checked += 1;
        if !ok && self.violation.is_none() {
            self.violation = Some(witness());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KerbyReport {
    pub label: String,
    pub checks: Vec<IdentityCheck>,
}

impl KerbyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violation.is_none())
    }

    pub fn check(&self, identity: KerbyIdentity) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.identity == identity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(p: usize) -> NearDomainTable {
        let add = (0..p)
            .map(|a| (0..p).map(|b| (a + b) % p).collect())
            .collect();
        let mul = (0..p)
            .map(|a| (0..p).map(|b| (a * b) % p).collect())
            .collect();
        NearDomainTable::new(add, mul, format!("Z/{p}")).unwrap()
    }

    #[test]
    fn structural_errors_are_not_axiom_failures() {
        assert_eq!(
            NearDomainTable::new(vec![vec![0]], vec![vec![0]], ""),
            Err(TableError::OrderTooSmall(1))
        );
        let err = NearDomainTable::new(
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0], vec![0, 2]],
            "",
        )
        .unwrap_err();
        assert!(matches!(
            err,
            TableError::EntryOutOfRange {
                table: "mul",
                row: 1,
                col: 1,
                ..
            }
        ));
        let err = NearDomainTable::new(vec![vec![0, 1], vec![1]], vec![vec![0, 0], vec![0, 1]], "")
            .unwrap_err();
        assert!(matches!(
            err,
            TableError::RowLength {
                table: "add",
                row: 1,
                ..
            }
        ));
    }

    #[test]
    fn prime_fields_pass() {
        for p in [2, 3, 5, 7] {
            let report = check_near_domain(&cyclic(p));
            assert!(report.passed(), "{p}: {report}");
            let nd = NearDomain::new(cyclic(p)).unwrap();
            assert_eq!(nd.characteristic(), p);
            assert!(nd.is_near_field());
            assert!(nd.kerby_suite().passed());
            assert_eq!(nd.e_set().len(), p);
        }
    }

    #[test]
    fn d_in_gf7() {
        let nd = NearDomain::new(cyclic(7)).unwrap();
        assert_eq!(nd.compute_d(3, 5), Ok(ONE));
        assert_eq!(nd.negatives(3), (4, 4));
    }

    #[test]
    fn quotient_undefined_when_b_is_minus_a() {
        let nd = NearDomain::new(cyclic(5)).unwrap();
        assert_eq!(nd.d_via_quotient(2, 4), Ok(ONE));
        assert_eq!(
            nd.d_via_quotient(2, 3),
            Err(TableError::QuotientUndefined { a: 2, b: 3 })
        );
    }

    #[test]
    fn non_group_multiplication_is_reported() {
        // Z/4 is not a field: 2 * 2 = 0
        let report = check_near_domain(&cyclic(4));
        assert!(report.loop_ok);
        assert!(!report.group_ok);
        let f = report.first_failure(Axiom::Group).unwrap();
        assert_eq!(f.clause, "closure");
        assert_eq!(f.witness, vec![2, 2]);
        assert!(matches!(
            NearDomain::new(cyclic(4)),
            Err(TableError::NotNearDomain(_))
        ));
    }

    #[test]
    fn broken_d_coefficient_is_reported() {
        // GF(5) multiplication with a perturbed addition
        let mut add: Vec<Vec<usize>> = cyclic(5).add_rows();
        add[1].swap(2, 3);
        add[2].swap(2, 3);
        let t = NearDomainTable::new(add, cyclic(5).mul_rows(), "").unwrap();
        let report = check_near_domain(&t);
        assert!(!report.passed());
        assert!(NearDomain::new(t).is_err());
    }
}
