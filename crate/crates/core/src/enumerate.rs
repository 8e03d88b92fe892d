//! Exhaustive search for all near-domains of a small order.
//!
//! For each isomorphism type of group of order `n - 1` the multiplication
//! table is fixed. Left distributivity then gives `a + b = a(1 + a^-1 b)`
//! for `a != 0`, so addition is determined by the single row
//! `theta(x) = 1 + x`. The search backtracks over `theta`:
//!
//! - `theta(0) = 1` and `theta` is injective (rows of the loop);
//! - every column of the induced addition is injective (columns of the
//!   loop), checked as each entry becomes known;
//! - the d-coefficient axiom reduces to `a = 1`, since
//!   `a + (b + x) = a(1 + (a^-1 b + a^-1 x))`; partial assignments are
//!   pruned when two values of `x` force different `d(1, b)`.
//!
//! Survivors are checked against the full axiom set, deduplicated up to
//! isomorphism and returned in canonical form.

mod groups;

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::permaction::find_isomorphism;
use crate::tables::{check_near_domain, Element, NearDomain, NearDomainTable, ONE, ZERO};

pub use groups::{groups_of_order, GroupType};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {0} is outside the supported range {MIN_ORDER}..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("no group of order {order} named {name}")]
    UnknownGroup { order: usize, name: String },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Which multiplicative groups to search over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupChoice {
    All,
    Only(GroupType),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub order: usize,
    pub groups: GroupChoice,
    /// Worker threads; the partition of the search space does not depend on
    /// it.
    pub jobs: usize,
}

impl SearchConfig {
    pub fn new(order: usize) -> Self {
        SearchConfig {
            order,
            groups: GroupChoice::All,
            jobs: 1,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// Restricts the search to the group of order `n - 1` printed as `name`
    /// (`C8`, `C2xC4`, `S3`, `Q8`, ...).
    pub fn with_group(mut self, name: &str) -> Result<Self, SearchError> {
        let g = groups_of_order(self.order.saturating_sub(1))
            .into_iter()
            .find(|g| g.to_string() == name)
            .ok_or_else(|| SearchError::UnknownGroup {
                order: self.order.saturating_sub(1),
                name: name.to_string(),
            })?;
        self.groups = GroupChoice::Only(g);
        Ok(self)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial assignments of `theta` visited.
    pub nodes: u64,
    /// Complete `theta` rows that passed the reduced constraints.
    pub candidates: u64,
    /// Candidates whose reconstructed table then failed the full axiom
    /// check; nonzero means the reduction lost information.
    pub reduction_failures: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub order: usize,
    /// Pairwise non-isomorphic, canonical, in ascending canonical order.
    pub tables: Vec<NearDomainTable>,
    /// Multiplicative group type of each entry of `tables`.
    pub groups: Vec<GroupType>,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn summary(&self) -> String {
        format!(
            "order={} found={} nodes={}",
            self.order,
            self.tables.len(),
            self.stats.nodes
        )
    }
}

/// Near-domain multiplication from a group table with identity 0: group
/// element `g` becomes carrier element `g + 1`.
fn near_domain_mul(group: &[usize], m: usize) -> Vec<Element> {
    let n = m + 1;
    let mut mul = vec![ZERO; n * n];
    for a in 0..m {
        for b in 0..m {
            mul[(a + 1) * n + b + 1] = group[a * m + b] + 1;
        }
    }
    mul
}

/// Depth-first search over `theta` for one multiplication table and one
/// fixed value of `theta(1)`.
struct ThetaSearch<'a> {
    n: usize,
    mul: &'a [Element],
    inv: Vec<Element>,
    theta: Vec<Option<Element>>,
    theta_inv: Vec<Option<Element>>,
    // col_used[b] has bit v set when some a already has a + b = v
    col_used: Vec<u32>,
    nodes: u64,
    found: Vec<Vec<Element>>,
}

impl<'a> ThetaSearch<'a> {
    fn new(n: usize, mul: &'a [Element]) -> Self {
        let mut inv = vec![ZERO; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == ONE).expect("group");
        }
        let mut col_used = vec![0u32; n];
        for (b, used) in col_used.iter_mut().enumerate() {
            *used |= 1 << b; // 0 + b = b
        }
        let mut s = ThetaSearch {
            n,
            mul,
            inv,
            theta: vec![None; n],
            theta_inv: vec![None; n],
            col_used,
            nodes: 0,
            found: Vec::new(),
        };
        assert!(s.assign(ZERO, ONE));
        s
    }

    #[inline]
    fn m(&self, a: Element, b: Element) -> Element {
        self.mul[a * self.n + b]
    }

    /// `a + b`, if already determined.
    fn sum(&self, a: Element, b: Element) -> Option<Element> {
        if a == ZERO {
            return Some(b);
        }
        self.theta[self.m(self.inv[a], b)].map(|t| self.m(a, t))
    }

    /// The `y` with `c + y = v`, if already determined.
    fn solve(&self, c: Element, v: Element) -> Option<Element> {
        if c == ZERO {
            return Some(v);
        }
        self.theta_inv[self.m(self.inv[c], v)].map(|u| self.m(c, u))
    }

    /// Sets `theta(x) = v`, updating column occupancy; false (with no
    /// change) if a column would repeat a value.
    fn assign(&mut self, x: Element, v: Element) -> bool {
        let n = self.n;
        // entries a + (a x) = a v for every a != 0
        for a in 1..n {
            let (b, val) = (self.m(a, x), self.m(a, v));
            if self.col_used[b] & (1 << val) != 0 {
                for a2 in 1..a {
                    let (b2, val2) = (self.m(a2, x), self.m(a2, v));
                    self.col_used[b2] &= !(1 << val2);
                }
                return false;
            }
            self.col_used[b] |= 1 << val;
        }
        self.theta[x] = Some(v);
        self.theta_inv[v] = Some(x);
        true
    }

    fn unassign(&mut self, x: Element) {
        let v = self.theta[x].take().expect("assigned");
        self.theta_inv[v] = None;
        for a in 1..self.n {
            let (b, val) = (self.m(a, x), self.m(a, v));
            self.col_used[b] &= !(1 << val);
        }
    }

    /// For each `b`, every `x` whose terms are known must force the same
    /// `d` in `1 + (b + x) = (1 + b) + d x`.
    fn d_consistent(&self) -> bool {
        let n = self.n;
        for b in 1..n {
            let Some(c) = self.theta[b] else { continue };
            let mut d_seen = None;
            for x in 1..n {
                let Some(u) = self.sum(b, x) else { continue };
                let Some(lhs) = self.theta[u] else { continue };
                let Some(y) = self.solve(c, lhs) else {
                    continue;
                };
                if y == ZERO {
                    return false;
                }
                let d = self.m(y, self.inv[x]);
                match d_seen {
                    None => d_seen = Some(d),
                    Some(d0) if d0 != d => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn run(&mut self, x: Element) {
        self.nodes += 1;
        if !self.d_consistent() {
            return;
        }
        if x == self.n {
            self.found
                .push(self.theta.iter().map(|t| t.expect("complete")).collect());
            return;
        }
        for v in 0..self.n {
            if self.theta_inv[v].is_some() {
                continue;
            }
            if self.assign(x, v) {
                self.run(x + 1);
                self.unassign(x);
            }
        }
    }
}

/// The addition table induced by `theta` and a multiplication table.
fn addition_from_theta(theta: &[Element], mul: &[Element], n: usize) -> Vec<Element> {
    let inv: Vec<Element> = (0..n)
        .map(|a| {
            if a == 0 {
                0
            } else {
                (1..n).find(|&b| mul[a * n + b] == ONE).expect("group")
            }
        })
        .collect();
    let mut add = vec![ZERO; n * n];
    add[..n].copy_from_slice(&(0..n).collect::<Vec<_>>());
    for a in 1..n {
        for b in 0..n {
            add[a * n + b] = mul[a * n + theta[mul[inv[a] * n + b]]];
        }
    }
    add
}

struct Partition {
    group: usize,
    first: Element,
}

struct PartitionOutcome {
    nodes: u64,
    candidates: u64,
    reduction_failures: u64,
    tables: Vec<NearDomain>,
}

fn search_partition(n: usize, mul: &[Element], first: Element) -> PartitionOutcome {
    let mut s = ThetaSearch::new(n, mul);
    let mut out = PartitionOutcome {
        nodes: 0,
        candidates: 0,
        reduction_failures: 0,
        tables: Vec::new(),
    };
    if s.theta_inv[first].is_none() && s.assign(ONE, first) {
        s.run(2);
    }
    out.nodes = s.nodes;
    for theta in s.found {
        let add = addition_from_theta(&theta, mul, n);
        let table = NearDomainTable::from_flat(n, add, mul.to_vec(), "").expect("well formed");
        out.candidates += 1;
        if !check_near_domain(&table).passed() {
            out.reduction_failures += 1;
            continue;
        }
        out.tables.push(NearDomain::new(table).expect("checked"));
    }
    out
}

/// All near-domains of order `cfg.order`, up to isomorphism.
pub fn enumerate_near_domains(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    let n = cfg.order;
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(SearchError::OrderOutOfRange(n));
    }
    let start = Instant::now();
    let types: Vec<GroupType> = match &cfg.groups {
        GroupChoice::All => groups_of_order(n - 1),
        GroupChoice::Only(g) if g.order() == n - 1 => vec![*g],
        GroupChoice::Only(g) => {
            return Err(SearchError::UnknownGroup {
                order: n - 1,
                name: g.to_string(),
            })
        }
    };
    let muls: Vec<Vec<Element>> = types
        .iter()
        .map(|g| near_domain_mul(&g.table(), n - 1))
        .collect();
    let partitions: Vec<Partition> = (0..types.len())
        .flat_map(|group| {
            (0..n)
                .filter(|&v| v != ONE)
                .map(move |first| Partition { group, first })
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    let outcomes: Vec<PartitionOutcome> = pool.install(|| {
        partitions
            .par_iter()
            .map(|p| search_partition(n, &muls[p.group], p.first))
            .collect()
    });

    let mut stats = SearchStats::default();
    let mut reps: Vec<(NearDomain, GroupType)> = Vec::new();
    for (p, outcome) in partitions.iter().zip(outcomes) {
        stats.nodes += outcome.nodes;
        stats.candidates += outcome.candidates;
        stats.reduction_failures += outcome.reduction_failures;
        for nd in outcome.tables {
            if !reps.iter().any(|(r, _)| find_isomorphism(r, &nd).is_some()) {
                reps.push((nd, types[p.group]));
            }
        }
    }

    let mut canon: Vec<(NearDomainTable, GroupType)> = reps
        .iter()
        .map(|(nd, g)| (canonical_form(nd.table()), *g))
        .collect();
    canon.sort_by(|(a, _), (b, _)| canonical_key(a).cmp(&canonical_key(b)));
    let (tables, groups) = canon
        .into_iter()
        .enumerate()
        .map(|(k, (t, g))| {
            let label = format!("N{n}.{} mul={g}", k + 1);
            (t.with_label(label), g)
        })
        .unzip();
    stats.elapsed = start.elapsed();
    Ok(SearchResult {
        order: n,
        tables,
        groups,
        stats,
    })
}

fn canonical_key(t: &NearDomainTable) -> (&[Element], &[Element]) {
    (t.add_flat(), t.mul_flat())
}

/// The lexicographically least relabeling (addition table first, then
/// multiplication) over all bijections fixing 0 and 1.
pub fn canonical_form(t: &NearDomainTable) -> NearDomainTable {
    let n = t.order();
    let mut best: Option<Vec<Element>> = None;
    let mut best_perm: Vec<Element> = (0..n).collect();
    let mut inv = vec![0; n];
    for rest in (2..n).permutations(n - 2) {
        // perm maps old labels to new labels; inv maps new to old
        let perm: Vec<Element> = [ZERO, ONE].into_iter().chain(rest).collect();
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                let mut ord = std::cmp::Ordering::Equal;
                for (k, &bk) in b.iter().enumerate() {
                    let (i, j) = (k / n % n, k % n);
                    let v = if k < n * n {
                        perm[t.add(inv[i], inv[j])]
                    } else {
                        perm[t.mul(inv[i], inv[j])]
                    };
                    ord = v.cmp(&bk);
                    if ord != std::cmp::Ordering::Equal {
                        break;
                    }
                }
                ord == std::cmp::Ordering::Less
            }
        };
        if better {
            let r = t.relabel(&perm);
            best = Some(r.add_flat().iter().chain(r.mul_flat()).copied().collect());
            best_perm = perm;
        }
    }
    t.relabel(&best_perm)
}

/// Whether every table in the result has associative addition.
pub fn verify_all_near_fields(result: &SearchResult) -> bool {
    result.tables.iter().all(|t| {
        let n = t.order();
        (0..n)
            .all(|a| (0..n).all(|b| (0..n).all(|c| t.add(t.add(a, b), c) == t.add(a, t.add(b, c)))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{galois_field, FieldSpec};

    #[test]
    fn order_cap() {
        assert_eq!(
            enumerate_near_domains(&SearchConfig::new(10)).unwrap_err(),
            SearchError::OrderOutOfRange(10)
        );
        assert!(enumerate_near_domains(&SearchConfig::new(1)).is_err());
    }

    #[test]
    fn order_three_is_gf3() {
        let r = enumerate_near_domains(&SearchConfig::new(3)).unwrap();
        assert_eq!(r.tables.len(), 1);
        let gf3 = galois_field(&FieldSpec::new(3, 1)).unwrap();
        assert_eq!(canonical_form(&gf3).add_flat(), r.tables[0].add_flat());
        assert_eq!(r.stats.reduction_failures, 0);
    }

    #[test]
    fn order_four_and_six() {
        let r = enumerate_near_domains(&SearchConfig::new(4)).unwrap();
        assert_eq!(r.tables.len(), 1);
        assert!(verify_all_near_fields(&r));
        let r = enumerate_near_domains(&SearchConfig::new(6)).unwrap();
        assert!(r.tables.is_empty());
        assert!(verify_all_near_fields(&r));
    }

    #[test]
    fn canonical_form_is_invariant_under_relabeling() {
        let t = galois_field(&FieldSpec::new(7, 1)).unwrap();
        let perm = vec![0, 1, 5, 2, 6, 3, 4];
        assert_eq!(canonical_form(&t), canonical_form(&t.relabel(&perm)));
    }

    #[test]
    fn group_restriction() {
        let cfg = SearchConfig::new(5).with_group("C2xC2").unwrap();
        assert!(enumerate_near_domains(&cfg).unwrap().tables.is_empty());
        let cfg = SearchConfig::new(5).with_group("C4").unwrap();
        assert_eq!(enumerate_near_domains(&cfg).unwrap().tables.len(), 1);
        assert!(SearchConfig::new(5).with_group("Q8").is_err());
    }

    #[test]
    fn injected_non_associative_table_is_caught() {
        let mut r = enumerate_near_domains(&SearchConfig::new(3)).unwrap();
        // a loop of order 5 that is not a group
        let add = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let mul = galois_field(&FieldSpec::new(5, 1)).unwrap().mul_rows();
        r.tables
            .push(NearDomainTable::new(add, mul, "bad").unwrap());
        assert!(!verify_all_near_fields(&r));
    }
}
