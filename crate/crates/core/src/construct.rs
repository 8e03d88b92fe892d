//! Concrete models: Galois fields and the index-2 Dickson near-fields.
//!
//! Field elements are encoded as base-`p` digit strings of their polynomial
//! coefficients, `c0 + c1 p + c2 p^2 + ...`, so 0 and 1 land on indices 0
//! and 1 as the table format requires.

use thiserror::Error;

use crate::tables::{check_near_domain, AxiomReport, Element, NearDomainTable};

/// Largest field order the constructors will tabulate.
pub const MAX_FIELD_ORDER: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("{p} is not prime (divisible by {factor})")]
    NotPrime { p: u64, factor: u64 },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the limit {MAX_FIELD_ORDER}")]
    TooLarge { p: u64, n: u32 },
    #[error("modulus must have {expected} coefficients (c0..c{degree}), got {found}")]
    ModulusLength {
        expected: usize,
        degree: u32,
        found: usize,
    },
    #[error("modulus is not monic: leading coefficient {0}")]
    NotMonic(u64),
    #[error("modulus coefficient {value} is not reduced modulo {p}")]
    CoefficientRange { value: u64, p: u64 },
    #[error("modulus {modulus} is reducible: divisible by {factor}")]
    Reducible { modulus: String, factor: String },
    #[error("no irreducible polynomial of degree {n} over F_{p}")]
    NoIrreducible { p: u64, n: u32 },
    #[error("{0} is even; Dickson twists need an odd prime power")]
    EvenOrder(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("twisted multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(Element, Element, Element),
    #[error("constructed table is not a near-domain: {0}")]
    NotNearDomain(Box<AxiomReport>),
}

/// Parameters of `GF(p^n)`. `modulus` is `c0, c1, ..., cn` (monic, so
/// `cn = 1`); `None` selects the first irreducible polynomial in
/// lexicographic order of `(c_{n-1}, ..., c0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub n: u32,
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn new(p: u64, n: u32) -> Self {
        FieldSpec {
            p,
            n,
            modulus: None,
        }
    }

    pub fn with_modulus(p: u64, n: u32, modulus: Vec<u64>) -> Self {
        FieldSpec {
            p,
            n,
            modulus: Some(modulus),
        }
    }
}

/// An index-2 Dickson near-field on `GF(q^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DicksonSpec {
    pub q: u64,
}

/// Smallest prime factor of `m`, or `None` if `m` is prime.
fn smallest_factor(m: u64) -> Option<u64> {
    if m < 2 {
        return Some(m);
    }
    (2..)
        .take_while(|f| f * f <= m)
        .find(|f| m.is_multiple_of(*f))
}

pub fn is_prime(m: u64) -> bool {
    m >= 2 && smallest_factor(m).is_none()
}

/// `(p, k)` with `m = p^k`, if `m` is a prime power.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let p = smallest_factor(m).unwrap_or(m);
    let mut rest = m;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Polynomials over `F_p`, coefficients low to high, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Poly {
    let g = trim(g.to_vec());
    let lead_inv = mod_inv(*g.last().expect("nonzero divisor"), p);
    let mut r = trim(f.to_vec());
    while r.len() >= g.len() {
        let shift = r.len() - g.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (i, &gi) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * gi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn poly_to_string(f: &[u64]) -> String {
    let terms: Vec<String> = f
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `code`.
fn monic_from_code(mut code: u64, deg: u32, p: u64) -> Poly {
    let mut f = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        f.push(code % p);
        code /= p;
    }
    f.push(1);
    f
}

/// A monic factor of `f` of degree `1..=deg/2`, found by trial division.
fn find_factor(f: &[u64], p: u64) -> Option<Poly> {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let g = monic_from_code(code, d, p);
            if poly_rem(f, &g, p).is_empty() {
                return Some(g);
            }
        }
    }
    None
}

/// Arithmetic in `GF(p^n)` on the index encoding.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    n: u32,
    modulus: Poly,
    order: usize,
    mul: Vec<Element>,
}

impl GaloisField {
    pub fn new(spec: &FieldSpec) -> Result<Self, ConstructError> {
        let FieldSpec { p, n, .. } = *spec;
        if let Some(factor) = smallest_factor(p) {
            return Err(ConstructError::NotPrime { p, factor });
        }
        if n == 0 {
            return Err(ConstructError::ZeroDegree);
        }
        let order = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(ConstructError::TooLarge { p, n })?;
        let modulus = match &spec.modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(ConstructError::ModulusLength {
                        expected: n as usize + 1,
                        degree: n,
                        found: m.len(),
                    });
                }
                if let Some(&value) = m.iter().find(|&&c| c >= p) {
                    return Err(ConstructError::CoefficientRange { value, p });
                }
                if m[n as usize] != 1 {
                    return Err(ConstructError::NotMonic(m[n as usize]));
                }
                if let Some(g) = find_factor(m, p) {
                    return Err(ConstructError::Reducible {
                        modulus: poly_to_string(m),
                        factor: poly_to_string(&g),
                    });
                }
                m.clone()
            }
            None => (0..order)
                .map(|code| monic_from_code(code, n, p))
                .find(|f| find_factor(f, p).is_none())
                .ok_or(ConstructError::NoIrreducible { p, n })?,
        };
        let order = order as usize;
        let mut field = GaloisField {
            p,
            n,
            modulus,
            order,
            mul: Vec::new(),
        };
        let mut mul = vec![0; order * order];
        for a in 0..order {
            for b in a..order {
                let c = field.mul_slow(a, b);
                mul[a * order + b] = c;
                mul[b * order + a] = c;
            }
        }
        field.mul = mul;
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn digits(&self, mut a: Element) -> Poly {
        let mut f = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            f.push(a as u64 % self.p);
            a /= self.p as usize;
        }
        f
    }

    fn index(&self, f: &[u64]) -> Element {
        f.iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Poly = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.index(&s)
    }

    fn mul_slow(&self, a: Element, b: Element) -> Element {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0; 2 * self.n as usize];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.n as usize, 0);
        self.index(&r)
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mul[a * self.order + b]
    }

    pub fn pow(&self, a: Element, mut e: u64) -> Element {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn table(&self, label: impl Into<String>) -> NearDomainTable {
        let n = self.order;
        let add = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.add(a, b));
        NearDomainTable::from_flat(n, add.collect(), self.mul.clone(), label)
            .expect("field tables are well formed")
    }
}

/// The field table of `GF(p^n)`.
pub fn galois_field(spec: &FieldSpec) -> Result<NearDomainTable, ConstructError> {
    let field = GaloisField::new(spec)?;
    let label = format!("GF({})", field.order());
    let table = field.table(label);
    let report = check_near_domain(&table);
    if !report.passed() {
        return Err(ConstructError::NotNearDomain(Box::new(report)));
    }
    Ok(table)
}

/// Which factor's square class selects the Frobenius twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TwistKey {
    Left,
    #[cfg(test)]
    Right,
}

/// The Dickson near-field of order `q^2`: `a o b = ab` when `a` is zero or a
/// square, `a o b = a b^q` otherwise.
pub fn dickson_near_field(spec: DicksonSpec) -> Result<NearDomainTable, ConstructError> {
    build_dickson(spec.q, TwistKey::Left)
}

fn build_dickson(q: u64, key: TwistKey) -> Result<NearDomainTable, ConstructError> {
    if q.is_multiple_of(2) {
        return Err(ConstructError::EvenOrder(q));
    }
    let (p, k) = prime_power(q).ok_or(ConstructError::NotPrimePower(q))?;
    let field = GaloisField::new(&FieldSpec::new(p, 2 * k))?;
    let n = field.order();
    let half = (n as u64 - 1) / 2;
    let square: Vec<bool> = (0..n).map(|a| a == 0 || field.pow(a, half) == 1).collect();
    let frob: Vec<Element> = (0..n).map(|b| field.pow(b, q)).collect();

    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let twisted = match key {
                TwistKey::Left => !square[a],
                #[cfg(test)]
                TwistKey::Right => !square[b],
            };
            mul[a * n + b] = match (key, twisted) {
                (_, false) => field.mul(a, b),
                (TwistKey::Left, true) => field.mul(a, frob[b]),
                #[cfg(test)]
                (TwistKey::Right, true) => field.mul(frob[a], b),
            };
        }
    }
    for a in 1..n {
        for b in 1..n {
            let ab = mul[a * n + b];
            for c in 1..n {
                if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                    return Err(ConstructError::NotAssociative(a, b, c));
                }
            }
        }
    }

    let add = field.table("").add_flat().to_vec();
    let table =
        NearDomainTable::from_flat(n, add, mul, format!("Dickson({n})")).expect("well formed");
    let report = check_near_domain(&table);
    if !report.passed() {
        return Err(ConstructError::NotNearDomain(Box::new(report)));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{Axiom, NearDomain};

    #[test]
    fn gf3_is_mod_3() {
        let t = galois_field(&FieldSpec::new(3, 1)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(t.add(a, b), (a + b) % 3);
                assert_eq!(t.mul(a, b), (a * b) % 3);
            }
        }
    }

    #[test]
    fn gf4_multiplicative_group_is_cyclic() {
        let t = galois_field(&FieldSpec::with_modulus(2, 2, vec![1, 1, 1])).unwrap();
        let nd = NearDomain::new(t).unwrap();
        let orders: Vec<usize> = (1..4).map(|a| nd.multiplicative_order(a)).collect();
        assert_eq!(orders, vec![1, 3, 3]);
        assert!(nd.multiplication_is_commutative());
    }

    #[test]
    fn contract_errors() {
        assert_eq!(
            galois_field(&FieldSpec::new(4, 1)).unwrap_err().to_string(),
            "4 is not prime (divisible by 2)"
        );
        let err = galois_field(&FieldSpec::with_modulus(2, 2, vec![1, 0, 1])).unwrap_err();
        assert_eq!(
            err,
            ConstructError::Reducible {
                modulus: "x^2 + 1".into(),
                factor: "x + 1".into()
            }
        );
        assert!(matches!(
            galois_field(&FieldSpec::with_modulus(3, 2, vec![1, 0, 2])),
            Err(ConstructError::NotMonic(2))
        ));
        assert!(matches!(
            galois_field(&FieldSpec::with_modulus(3, 2, vec![1, 1])),
            Err(ConstructError::ModulusLength { .. })
        ));
        assert_eq!(
            dickson_near_field(DicksonSpec { q: 4 }),
            Err(ConstructError::EvenOrder(4))
        );
        assert_eq!(
            dickson_near_field(DicksonSpec { q: 15 }),
            Err(ConstructError::NotPrimePower(15))
        );
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(is_prime(7) && !is_prime(1) && !is_prime(9));
    }

    #[test]
    fn fields_satisfy_right_distributivity() {
        for (p, n) in [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2)] {
            let nd = NearDomain::new(galois_field(&FieldSpec::new(p, n)).unwrap()).unwrap();
            assert!(nd.right_distributivity_witness().is_none());
            assert!(nd.multiplication_is_commutative());
        }
    }

    #[test]
    fn dickson_squares_have_index_two() {
        for q in [3, 5, 7, 9] {
            let t = dickson_near_field(DicksonSpec { q }).unwrap();
            let nd = NearDomain::new(t).unwrap();
            assert!(nd.is_near_field());
            assert!(nd.right_distributivity_witness().is_some(), "q={q}");
            let field = GaloisField::new(&FieldSpec::new(
                prime_power(q).unwrap().0,
                2 * prime_power(q).unwrap().1,
            ))
            .unwrap();
            let n = field.order();
            let squares = (1..n)
                .filter(|&a| field.pow(a, (n as u64 - 1) / 2) == 1)
                .count();
            assert_eq!(2 * squares, n - 1);
        }
    }

    #[test]
    fn mirrored_twist_breaks_left_distributivity() {
        match build_dickson(3, TwistKey::Right) {
            Err(ConstructError::NotNearDomain(report)) => {
                assert!(!report.left_dist_ok);
                assert!(report.first_failure(Axiom::LeftDistributivity).is_some());
            }
            other => panic!("expected a left-distributivity failure, got {other:?}"),
        }
    }
}
