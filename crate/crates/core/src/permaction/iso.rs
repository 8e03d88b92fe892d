//! Isomorphism of near-domain tables.
//!
//! Backtracking over bijections fixing 0 and 1. Candidate images must agree
//! on (multiplicative order, additive order, E-membership), and every
//! assignment is closed under both operations before branching again, so
//! in practice the search only branches on a generating set.

use crate::tables::{Element, NearDomain, NearDomainTable, ONE, ZERO};

type Signature = (usize, usize, bool);

fn signatures(nd: &NearDomain) -> Vec<Signature> {
    (0..nd.order())
        .map(|a| (nd.multiplicative_order(a), nd.additive_order(a), nd.in_e(a)))
        .collect()
}

#[derive(Clone)]
struct Partial {
    fwd: Vec<Option<Element>>,
    bwd: Vec<Option<Element>>,
    assigned: Vec<Element>,
}

struct Search<'a> {
    a: &'a NearDomainTable,
    b: &'a NearDomainTable,
    sig_a: Vec<Signature>,
    sig_b: Vec<Signature>,
}

impl Search<'_> {
    /// Assigns `x -> y` and everything it forces; false on contradiction.
    fn extend(&self, st: &mut Partial, x: Element, y: Element) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match st.fwd[x] {
                Some(y0) if y0 == y => continue,
                Some(_) => return false,
                None => {}
            }
            if st.bwd[y].is_some() || self.sig_a[x] != self.sig_b[y] {
                return false;
            }
            st.fwd[x] = Some(y);
            st.bwd[y] = Some(x);
            st.assigned.push(x);
            for &z in &st.assigned {
                let w = st.fwd[z].expect("assigned");
                for (u, v, fu, fv) in [(x, z, y, w), (z, x, w, y)] {
                    queue.push((self.a.add(u, v), self.b.add(fu, fv)));
                    queue.push((self.a.mul(u, v), self.b.mul(fu, fv)));
                }
            }
        }
        true
    }

    fn solve(&self, st: Partial) -> Option<Vec<Element>> {
        let Some(x) = st.fwd.iter().position(Option::is_none) else {
            return Some(st.fwd.into_iter().map(|y| y.expect("complete")).collect());
        };
        for y in
            (0..self.b.order()).filter(|&y| st.bwd[y].is_none() && self.sig_b[y] == self.sig_a[x])
        {
            let mut next = st.clone();
            if self.extend(&mut next, x, y) {
                if let Some(found) = self.solve(next) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// A bijection `f` fixing 0 and 1 with `f(a + b) = f(a) + f(b)` and
/// `f(ab) = f(a) f(b)`, if one exists.
pub fn find_isomorphism(a: &NearDomain, b: &NearDomain) -> Option<Vec<Element>> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let search = Search {
        a: a.table(),
        b: b.table(),
        sig_a: signatures(a),
        sig_b: signatures(b),
    };
    let mut sorted_a = search.sig_a.clone();
    let mut sorted_b = search.sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    let mut st = Partial {
        fwd: vec![None; n],
        bwd: vec![None; n],
        assigned: Vec::with_capacity(n),
    };
    if !search.extend(&mut st, ZERO, ZERO) || !search.extend(&mut st, ONE, ONE) {
        return None;
    }
    search.solve(st)
}

/// Whether two tables are isomorphic near-domains. Tables that fail the
/// axioms are never isomorphic to anything.
pub fn iso_near_domain(t1: &NearDomainTable, t2: &NearDomainTable) -> bool {
    if t1.order() != t2.order() {
        return false;
    }
    match (NearDomain::new(t1.clone()), NearDomain::new(t2.clone())) {
        (Ok(a), Ok(b)) => find_isomorphism(&a, &b).is_some(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{dickson_near_field, galois_field, DicksonSpec, FieldSpec};

    #[test]
    fn found_map_is_an_isomorphism() {
        let a =
            NearDomain::new(galois_field(&FieldSpec::with_modulus(3, 2, vec![1, 0, 1])).unwrap())
                .unwrap();
        let b =
            NearDomain::new(galois_field(&FieldSpec::with_modulus(3, 2, vec![2, 1, 1])).unwrap())
                .unwrap();
        assert_ne!(a.table().mul_flat(), b.table().mul_flat());
        let f = find_isomorphism(&a, &b).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(f[a.add(x, y)], b.add(f[x], f[y]));
                assert_eq!(f[a.mul(x, y)], b.mul(f[x], f[y]));
            }
        }
    }

    #[test]
    fn field_and_dickson_differ() {
        let gf9 = galois_field(&FieldSpec::new(3, 2)).unwrap();
        let d9 = dickson_near_field(DicksonSpec { q: 3 }).unwrap();
        assert!(!iso_near_domain(&gf9, &d9));
        assert!(iso_near_domain(&d9, &d9));
        let gf7 = galois_field(&FieldSpec::new(7, 1)).unwrap();
        assert!(!iso_near_domain(&gf9, &gf7));
    }
}
