//! Sharply 2-transitive permutation groups and their near-domains.
//!
//! Permutations are dense image lists; a [`PermGroup`] is an explicit,
//! closed, deduplicated element list. Everything here is exhaustive, which
//! is the point at degrees up to a few dozen.

mod format;
mod iso;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::tables::{check_near_domain, Element, NearDomain, NearDomainTable, ONE, ZERO};

pub use iso::{find_isomorphism, iso_near_domain};

/// Largest degree the group routines accept.
pub const MAX_DEGREE: usize = 64;

/// Largest near-domain order for subgroup enumeration.
pub const MAX_SUBGROUP_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image list of length {degree} is not a permutation: {reason}")]
    NotAPermutation { degree: usize, reason: String },
    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { found: usize, expected: usize },
    #[error("degree {0} is outside 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("element set is not closed: product of elements {0} and {1} is missing")]
    NotClosed(usize, usize),
    #[error("element set does not contain the identity")]
    NoIdentity,
    #[error("group is not sharply 2-transitive")]
    NotSharply2Transitive,
    #[error("translations do not share one order: {0:?}")]
    NonUniformTranslations(Vec<usize>),
    #[error("unsupported characteristic 2: involutions are fixed-point-free")]
    UnsupportedCharacteristic,
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("base points must be distinct")]
    EqualBasePoints,
    #[error("order {0} is too large for subgroup enumeration (limit {MAX_SUBGROUP_ORDER})")]
    TooLarge(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A bijection on `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&cells.join(" "))
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(PermError::BadDegree(n));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(PermError::NotAPermutation {
                    degree: n,
                    reason: format!("image {x} out of range"),
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotAPermutation {
                    degree: n,
                    reason: format!("image {x} repeated"),
                });
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u16;
        }
        Permutation { images: inv }
    }

    /// `g self g^-1`
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| x == y as usize)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.apply(x) == x).collect()
    }
}

/// A finite permutation group given by all of its elements.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Takes an explicit element list and verifies that it is a group.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self, PermError> {
        let group = Self::assemble(degree, elements)?;
        if !group.contains(&Permutation::identity(degree)) {
            return Err(PermError::NoIdentity);
        }
        for (i, a) in group.elements.iter().enumerate() {
            for (j, b) in group.elements.iter().enumerate() {
                if !group.contains(&a.compose(b)) {
                    return Err(PermError::NotClosed(i, j));
                }
            }
        }
        Ok(group)
    }

    /// The group generated by `generators`.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self, PermError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(PermError::BadDegree(degree));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    found: g.degree(),
                    expected: degree,
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Self::assemble(degree, seen.into_iter().collect())
    }

    fn assemble(degree: usize, mut elements: Vec<Permutation>) -> Result<Self, PermError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(PermError::BadDegree(degree));
        }
        if let Some(g) = elements.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                found: g.degree(),
                expected: degree,
            });
        }
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        Ok(PermGroup {
            degree,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in ascending image-list order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Multiset of element orders, as `(order, count)` ascending.
    pub fn order_statistics(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for g in &self.elements {
            *counts.entry(g.order()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn involutions(&self) -> Vec<Permutation> {
        self.elements
            .iter()
            .filter(|g| g.is_involution())
            .cloned()
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        let orbit: HashSet<usize> = self.elements.iter().map(|g| g.apply(0)).collect();
        orbit.len() == self.degree
    }
}

/// `{ x -> a + b x : b != 0 }` as explicit permutations.
pub fn affine_group(nd: &NearDomain) -> Result<PermGroup, PermError> {
    let n = nd.order();
    let mut elements = Vec::with_capacity(n * (n - 1));
    for a in 0..n {
        for b in 1..n {
            let images = (0..n).map(|x| nd.add(a, nd.mul(b, x))).collect();
            elements.push(Permutation::new(images)?);
        }
    }
    let group = PermGroup::from_elements(n, elements)
        .map_err(|e| PermError::Internal(format!("affine maps do not form a group: {e}")))?;
    if group.order() != n * (n - 1) {
        return Err(PermError::Internal(format!(
            "{} distinct affine maps, expected {}",
            group.order(),
            n * (n - 1)
        )));
    }
    Ok(group)
}

/// Order count plus the orbit of the base pair `(0, 1)`.
pub fn is_sharply_2_transitive(g: &PermGroup) -> bool {
    let n = g.degree();
    if n < 2 || g.order() != n * (n - 1) {
        return false;
    }
    let images: HashSet<(usize, usize)> = g
        .elements()
        .iter()
        .map(|p| (p.apply(0), p.apply(1)))
        .collect();
    images.len() == n * (n - 1)
}

fn require_sharply_2_transitive(g: &PermGroup) -> Result<(), PermError> {
    if is_sharply_2_transitive(g) {
        Ok(())
    } else {
        Err(PermError::NotSharply2Transitive)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvolutionReport {
    pub involutions: usize,
    pub involutions_have_fixed_points: bool,
    /// Fixed-point counts over all involutions, ascending and deduplicated.
    pub fixed_point_counts: Vec<usize>,
    pub translations: usize,
    /// Distinct orders among translations.
    pub translation_orders: Vec<usize>,
    pub involutions_conjugate: bool,
    pub translations_conjugate: bool,
    /// Points fixed by exactly one involution, when involutions have fixed
    /// points.
    pub unique_fixing_involution: Option<bool>,
    /// Distinct pairs swapped by exactly one involution.
    pub unique_swapping_involution: Option<bool>,
    /// `g i_x g^-1 = i_(gx)` for all `g` and `x`.
    pub conjugation_equivalent: Option<bool>,
    pub violations: Vec<String>,
}

impl InvolutionReport {
    pub fn common_translation_order(&self) -> Option<usize> {
        match self.translation_orders.as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }
}

/// Involutions, translations and the point/involution correspondence.
pub fn involution_translation_analysis(g: &PermGroup) -> Result<InvolutionReport, PermError> {
    require_sharply_2_transitive(g)?;
    let n = g.degree();
    let invs = g.involutions();
    let mut violations = Vec::new();

    let fixed: Vec<Vec<usize>> = invs.iter().map(Permutation::fixed_points).collect();
    let fixed_point_counts: BTreeSet<usize> = fixed.iter().map(Vec::len).collect();
    let has_fixed = fixed.iter().any(|f| !f.is_empty());

    let mut translations: HashSet<Permutation> = HashSet::new();
    for (i, a) in invs.iter().enumerate() {
        for (j, b) in invs.iter().enumerate() {
            if i != j {
                translations.insert(a.compose(b));
            }
        }
    }
    let translation_orders: BTreeSet<usize> = translations.iter().map(Permutation::order).collect();
    if translation_orders.len() > 1 {
        violations.push(format!("translations have orders {translation_orders:?}"));
    }

    let conjugacy_class = |x: &Permutation| -> HashSet<Permutation> {
        g.elements().iter().map(|h| x.conjugate_by(h)).collect()
    };
    let inv_set: HashSet<Permutation> = invs.iter().cloned().collect();
    let involutions_conjugate = invs.first().is_none_or(|i| conjugacy_class(i) == inv_set);
    if !involutions_conjugate {
        violations.push("involutions are not all conjugate".into());
    }
    let translations_conjugate = translations
        .iter()
        .next()
        .is_none_or(|t| conjugacy_class(t) == translations);
    if !translations_conjugate {
        violations.push("translations are not all conjugate".into());
    }

    let (mut unique_fix, mut unique_swap, mut equivalent) = (None, None, None);
    if has_fixed {
        let mut fixing: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, f) in fixed.iter().enumerate() {
            for &x in f {
                fixing[x].push(k);
            }
        }
        let fix_ok = fixing.iter().all(|v| v.len() == 1);
        if !fix_ok {
            violations.push("some point is not fixed by exactly one involution".into());
        }
        let swap_ok = (0..n).all(|x| {
            (0..n)
                .filter(|&y| y != x)
                .all(|y| invs.iter().filter(|i| i.apply(x) == y).count() == 1)
        });
        if !swap_ok {
            violations.push("some pair is not swapped by exactly one involution".into());
        }
        let equiv_ok = fix_ok
            && g.elements().iter().all(|h| {
                (0..n).all(|x| invs[fixing[x][0]].conjugate_by(h) == invs[fixing[h.apply(x)][0]])
            });
        if !equiv_ok {
            violations
                .push("action on points is not equivalent to conjugation on involutions".into());
        }
        unique_fix = Some(fix_ok);
        unique_swap = Some(swap_ok);
        equivalent = Some(equiv_ok);
    }

    Ok(InvolutionReport {
        involutions: invs.len(),
        involutions_have_fixed_points: has_fixed,
        fixed_point_counts: fixed_point_counts.into_iter().collect(),
        translations: translations.len(),
        translation_orders: translation_orders.into_iter().collect(),
        involutions_conjugate,
        translations_conjugate,
        unique_fixing_involution: unique_fix,
        unique_swapping_involution: unique_swap,
        conjugation_equivalent: equivalent,
        violations,
    })
}

/// 2 when involutions are fixed-point-free, otherwise the common order of
/// the translations.
pub fn permutation_characteristic(g: &PermGroup) -> Result<usize, PermError> {
    let report = involution_translation_analysis(g)?;
    if !report.involutions_have_fixed_points {
        return Ok(2);
    }
    report
        .common_translation_order()
        .ok_or(PermError::NonUniformTranslations(report.translation_orders))
}

/// The regular normal subgroup formed by the translations and the
/// identity, if that set is closed. Fixed-point-free involutions count as
/// translations; in degree 2 there is no other.
pub fn split_check(g: &PermGroup) -> Result<Option<PermGroup>, PermError> {
    require_sharply_2_transitive(g)?;
    let n = g.degree();
    let invs = g.involutions();
    let mut set: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    set.extend(invs.iter().filter(|i| i.fixed_points().is_empty()).cloned());
    for (i, a) in invs.iter().enumerate() {
        for (j, b) in invs.iter().enumerate() {
            if i != j {
                set.insert(a.compose(b));
            }
        }
    }
    let candidate = match PermGroup::from_elements(n, set.into_iter().collect()) {
        Ok(group) => group,
        Err(PermError::NotClosed(..)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let regular = candidate.order() == n && candidate.is_transitive();
    let normal = g.elements().iter().all(|h| {
        candidate
            .elements()
            .iter()
            .all(|t| candidate.contains(&t.conjugate_by(h)))
    });
    Ok((regular && normal).then_some(candidate))
}

/// `{ g : g x = x }`.
pub fn point_stabilizer(g: &PermGroup, x: usize) -> Result<PermGroup, PermError> {
    if x >= g.degree() {
        return Err(PermError::PointOutOfRange {
            point: x,
            degree: g.degree(),
        });
    }
    let elements = g
        .elements()
        .iter()
        .filter(|h| h.apply(x) == x)
        .cloned()
        .collect();
    PermGroup::from_elements(g.degree(), elements)
}

/// Whether `b -> (x -> b x)` maps the nonzero elements of `nd`
/// isomorphically onto `stabilizer`.
pub fn multiplication_matches_stabilizer(nd: &NearDomain, stabilizer: &PermGroup) -> bool {
    let n = nd.order();
    if stabilizer.degree() != n || stabilizer.order() != n - 1 {
        return false;
    }
    let left: Vec<Permutation> = (0..n)
        .map(|b| Permutation {
            images: (0..n).map(|x| nd.mul(b, x) as u16).collect(),
        })
        .collect();
    let distinct: HashSet<&Permutation> = left[1..].iter().collect();
    distinct.len() == n - 1
        && left[1..].iter().all(|p| stabilizer.contains(p))
        && (1..n).all(|b| (1..n).all(|c| left[b].compose(&left[c]) == left[nd.mul(b, c)]))
}

/// Rebuilds a near-domain from a sharply 2-transitive group of
/// characteristic other than 2, with `zero` and `one` as base points.
///
/// Points are relabeled so that `zero -> 0`, `one -> 1` and the remaining
/// points keep their relative order. Multiplication is read off the
/// stabilizer of `zero`; `a + b` is `i_(zero,a)(i_zero(b))`, where `i_zero`
/// is the involution fixing `zero` and `i_(zero,a)` the one swapping `zero`
/// and `a`.
pub fn coordinatize(g: &PermGroup, zero: usize, one: usize) -> Result<NearDomainTable, PermError> {
    let n = g.degree();
    for point in [zero, one] {
        if point >= n {
            return Err(PermError::PointOutOfRange { point, degree: n });
        }
    }
    if zero == one {
        return Err(PermError::EqualBasePoints);
    }
    let report = involution_translation_analysis(g)?;
    if !report.involutions_have_fixed_points {
        return Err(PermError::UnsupportedCharacteristic);
    }
    if report.unique_fixing_involution != Some(true)
        || report.unique_swapping_involution != Some(true)
    {
        return Err(PermError::Internal(report.violations.join("; ")));
    }

    let mut label = vec![usize::MAX; n];
    label[zero] = ZERO;
    label[one] = ONE;
    for (next, p) in (2..).zip((0..n).filter(|&p| p != zero && p != one)) {
        label[p] = next;
    }
    let mut point = vec![0; n];
    for p in 0..n {
        point[label[p]] = p;
    }

    let invs = g.involutions();
    let fixing = |x: usize| {
        invs.iter()
            .find(|i| i.apply(x) == x)
            .expect("unique fixing involution")
    };
    let swapping = |x: usize, y: usize| {
        invs.iter()
            .find(|i| i.apply(x) == y)
            .expect("unique swapping involution")
    };

    let stab = point_stabilizer(g, zero)?;
    let mut mul = vec![ZERO; n * n];
    let mut add = vec![ZERO; n * n];
    let i_zero = fixing(zero);
    for a in 0..n {
        let (la, row) = (label[a], label[a] * n);
        if a == zero {
            for b in 0..n {
                add[row + label[b]] = label[b];
            }
            continue;
        }
        let g_a = stab
            .elements()
            .iter()
            .find(|h| h.apply(one) == a)
            .ok_or_else(|| {
                PermError::Internal(format!("no stabilizer element maps {one} to {a}"))
            })?;
        let shift = swapping(zero, a).compose(i_zero);
        for b in 0..n {
            mul[row + label[b]] = label[g_a.apply(b)];
            add[row + label[b]] = label[shift.apply(b)];
        }
        debug_assert_eq!(mul[row + ONE], la);
    }

    let table = NearDomainTable::from_flat(n, add, mul, "coordinatized")
        .map_err(|e| PermError::Internal(e.to_string()))?;
    let report = check_near_domain(&table);
    if !report.passed() {
        return Err(PermError::Internal(format!(
            "coordinatized table fails: {report}"
        )));
    }
    let nd = NearDomain::new(table).map_err(|e| PermError::Internal(e.to_string()))?;
    let aff = affine_group(&nd)?;
    let transported = aff.elements().iter().all(|h| {
        let images = (0..n).map(|p| point[h.apply(label[p])]).collect();
        Permutation::new(images).is_ok_and(|q| g.contains(&q))
    });
    if !transported || aff.order() != g.order() {
        return Err(PermError::Internal(
            "affine group of the coordinatization differs from the input".into(),
        ));
    }
    Ok(nd.into_table())
}

/// A subgroup of the multiplicative group `K^x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupInfo {
    pub elements: Vec<Element>,
    pub index: usize,
}

/// All subgroups of `K^x` of index at most `max_index` that contain no
/// nontrivial `d(a,b)`, ordered by index and then element list.
pub fn subgroups_avoiding(
    nd: &NearDomain,
    max_index: usize,
) -> Result<Vec<SubgroupInfo>, PermError> {
    let n = nd.order();
    if n > MAX_SUBGROUP_ORDER {
        return Err(PermError::TooLarge(n));
    }
    let group_order = n - 1;
    // subgroups as bitmasks over elements 1..n
    let bit = |a: Element| 1u32 << a;
    let close = |mut mask: u32| -> u32 {
        loop {
            let mut next = mask;
            for a in (1..n).filter(|&a| mask & bit(a) != 0) {
                for b in (1..n).filter(|&b| mask & bit(b) != 0) {
                    next |= bit(nd.mul(a, b));
                }
            }
            if next == mask {
                return mask;
            }
            mask = next;
        }
    };
    let mut found: BTreeSet<u32> = BTreeSet::new();
    let mut frontier = vec![bit(ONE)];
    found.insert(bit(ONE));
    while let Some(h) = frontier.pop() {
        for a in (1..n).filter(|&a| h & bit(a) == 0) {
            let k = close(h | bit(a));
            if found.insert(k) {
                frontier.push(k);
            }
        }
    }
    let forbidden: u32 = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| nd.d(a, b))
        .filter(|&d| d != ONE)
        .fold(0, |acc, d| acc | bit(d));
    let mut out: Vec<SubgroupInfo> = found
        .into_iter()
        .filter(|&h| h & forbidden == 0)
        .map(|h| {
            let elements: Vec<Element> = (1..n).filter(|&a| h & bit(a) != 0).collect();
            SubgroupInfo {
                index: group_order / elements.len(),
                elements,
            }
        })
        .filter(|s| s.index <= max_index)
        .collect();
    out.sort_by(|x, y| {
        x.index
            .cmp(&y.index)
            .then_with(|| x.elements.cmp(&y.elements))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{dickson_near_field, galois_field, DicksonSpec, FieldSpec};

    fn gf(p: u64, n: u32) -> NearDomain {
        NearDomain::new(galois_field(&FieldSpec::new(p, n)).unwrap()).unwrap()
    }

    fn dickson9() -> NearDomain {
        NearDomain::new(dickson_near_field(DicksonSpec { q: 3 }).unwrap()).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let gens = [
            Permutation::new((1..n).chain([0]).collect()).unwrap(),
            Permutation::new([1, 0].into_iter().chain(2..n).collect()).unwrap(),
        ];
        PermGroup::generate(n, &gens).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let q = Permutation::new(vec![1, 0, 2]).unwrap();
        // apply q first
        assert_eq!(p.compose(&q).images(), vec![2, 1, 0]);
    }

    #[test]
    fn from_elements_rejects_non_groups() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let err = PermGroup::from_elements(3, vec![Permutation::identity(3), p]).unwrap_err();
        assert!(matches!(err, PermError::NotClosed(..)));
        assert_eq!(
            PermGroup::from_elements(3, vec![Permutation::new(vec![1, 0, 2]).unwrap()]),
            Err(PermError::NoIdentity)
        );
    }

    #[test]
    fn affine_gf3_is_s3() {
        let aff = affine_group(&gf(3, 1)).unwrap();
        assert_eq!(aff, symmetric(3));
        assert!(is_sharply_2_transitive(&aff));
        let report = involution_translation_analysis(&aff).unwrap();
        assert_eq!(report.involutions, 3);
        assert_eq!(report.translations, 2);
        assert_eq!(report.translation_orders, vec![3]);
    }

    #[test]
    fn s4_is_not_sharply_2_transitive() {
        assert!(!is_sharply_2_transitive(&symmetric(4)));
        assert_eq!(
            involution_translation_analysis(&symmetric(4)).unwrap_err(),
            PermError::NotSharply2Transitive
        );
    }

    #[test]
    fn characteristic_two_has_fixed_point_free_involutions() {
        let aff = affine_group(&gf(2, 2)).unwrap();
        assert_eq!(aff.order(), 12);
        let report = involution_translation_analysis(&aff).unwrap();
        assert!(!report.involutions_have_fixed_points);
        assert_eq!(report.involutions, 3);
        assert_eq!(permutation_characteristic(&aff), Ok(2));
        assert_eq!(
            coordinatize(&aff, 0, 1),
            Err(PermError::UnsupportedCharacteristic)
        );
        assert_eq!(split_check(&aff).unwrap().unwrap().order(), 4);
    }

    #[test]
    fn gf2_splits_through_its_single_involution() {
        let aff = affine_group(&gf(2, 1)).unwrap();
        assert_eq!(aff.order(), 2);
        assert_eq!(permutation_characteristic(&aff), Ok(2));
        assert_eq!(split_check(&aff).unwrap().unwrap().order(), 2);
    }

    #[test]
    fn odd_characteristic_involutions_fix_one_point() {
        let aff = affine_group(&gf(3, 2)).unwrap();
        let report = involution_translation_analysis(&aff).unwrap();
        assert!(report.involutions_have_fixed_points);
        assert_eq!(report.fixed_point_counts, vec![1]);
        assert_eq!(report.involutions, 9);
        assert_eq!(report.translation_orders, vec![3]);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn stabilizers() {
        let aff = affine_group(&gf(5, 1)).unwrap();
        let stab = point_stabilizer(&aff, 0).unwrap();
        assert_eq!(stab.order_statistics(), vec![(1, 1), (2, 1), (4, 2)]);
        assert!(multiplication_matches_stabilizer(&gf(5, 1), &stab));
        assert!(point_stabilizer(&aff, 5).is_err());
        let s3 = symmetric(3);
        for x in 0..3 {
            assert_eq!(point_stabilizer(&s3, x).unwrap().order(), 2);
        }
    }

    #[test]
    fn dickson_stabilizer_is_quaternion() {
        let nd = dickson9();
        let aff = affine_group(&nd).unwrap();
        assert_eq!(aff.order(), 72);
        let stab = point_stabilizer(&aff, 0).unwrap();
        assert!(!stab.is_abelian());
        assert_eq!(stab.order_statistics(), vec![(1, 1), (2, 1), (4, 6)]);
        assert!(multiplication_matches_stabilizer(&nd, &stab));
    }

    #[test]
    fn coordinatize_round_trips() {
        for nd in [gf(5, 1), dickson9()] {
            let aff = affine_group(&nd).unwrap();
            let t = coordinatize(&aff, 0, 1).unwrap();
            assert!(iso_near_domain(nd.table(), &t));
        }
    }

    #[test]
    fn coordinatize_other_base_points() {
        let nd = gf(7, 1);
        let aff = affine_group(&nd).unwrap();
        let t = coordinatize(&aff, 3, 5).unwrap();
        assert!(iso_near_domain(nd.table(), &t));
        assert_eq!(coordinatize(&aff, 2, 2), Err(PermError::EqualBasePoints));
        assert!(matches!(
            coordinatize(&aff, 0, 9),
            Err(PermError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn subgroups_of_gf7() {
        let subs = subgroups_avoiding(&gf(7, 1), 3).unwrap();
        let indices: Vec<usize> = subs.iter().map(|s| s.index).collect();
        assert_eq!(indices, vec![1, 2, 3]);
        let whole = subgroups_avoiding(&gf(7, 1), 1).unwrap();
        assert_eq!(
            whole,
            vec![SubgroupInfo {
                elements: (1..7).collect(),
                index: 1
            }]
        );
    }

    #[test]
    fn subgroup_enumeration_is_bounded() {
        assert_eq!(
            subgroups_avoiding(&gf(17, 1), 2),
            Err(PermError::TooLarge(17))
        );
    }
}
