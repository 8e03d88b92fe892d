//! Every group of order 1 through 8, up to isomorphism, as a Cayley table
//! on `0..m` with identity 0.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupType {
    /// Abelian, by invariant factors (each divides the next).
    Abelian(&'static [usize]),
    Dihedral(usize),
    Quaternion,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::Abelian([]) => f.write_str("C1"),
            GroupType::Abelian(factors) => {
                let parts: Vec<String> = factors.iter().map(|k| format!("C{k}")).collect();
                f.write_str(&parts.join("x"))
            }
            GroupType::Dihedral(3) => f.write_str("S3"),
            GroupType::Dihedral(k) => write!(f, "D{k}"),
            GroupType::Quaternion => f.write_str("Q8"),
        }
    }
}

impl GroupType {
    pub fn order(&self) -> usize {
        match self {
            GroupType::Abelian(factors) => factors.iter().product(),
            GroupType::Dihedral(k) => 2 * k,
            GroupType::Quaternion => 8,
        }
    }

    /// Cayley table, row-major, identity at 0.
    pub fn table(&self) -> Vec<usize> {
        let m = self.order();
        let mut t = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                t[a * m + b] = self.product(a, b);
            }
        }
        t
    }

    fn product(&self, a: usize, b: usize) -> usize {
        match *self {
            GroupType::Abelian(factors) => {
                // mixed radix, first factor least significant
                let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
                for &k in factors {
                    out += ((a % k + b % k) % k) * scale;
                    a /= k;
                    b /= k;
                    scale *= k;
                }
                out
            }
            GroupType::Dihedral(k) => {
                // r^i s^j encoded as i + k j; s r = r^-1 s
                let (i, j) = (a % k, a / k);
                let (i2, j2) = (b % k, b / k);
                let rot = if j == 0 {
                    (i + i2) % k
                } else {
                    (i + k - i2) % k
                };
                rot + k * ((j + j2) % 2)
            }
            GroupType::Quaternion => {
                // sign * unit, unit in {1, i, j, k}, encoded as unit + 4 * sign
                const UNIT: [[(usize, usize); 4]; 4] = [
                    [(0, 0), (1, 0), (2, 0), (3, 0)],
                    [(1, 0), (0, 1), (3, 0), (2, 1)],
                    [(2, 0), (3, 1), (0, 1), (1, 0)],
                    [(3, 0), (2, 0), (1, 1), (0, 1)],
                ];
                let (u, v) = UNIT[a % 4][b % 4];
                u + 4 * ((a / 4 + b / 4 + v) % 2)
            }
        }
    }
}

/// Isomorphism types of groups of order `m`, for `1 <= m <= 8`.
pub fn groups_of_order(m: usize) -> Vec<GroupType> {
    use GroupType::*;
    match m {
        1 => vec![Abelian(&[])],
        2 => vec![Abelian(&[2])],
        3 => vec![Abelian(&[3])],
        4 => vec![Abelian(&[4]), Abelian(&[2, 2])],
        5 => vec![Abelian(&[5])],
        6 => vec![Abelian(&[6]), Dihedral(3)],
        7 => vec![Abelian(&[7])],
        8 => vec![
            Abelian(&[8]),
            Abelian(&[2, 4]),
            Abelian(&[2, 2, 2]),
            Dihedral(4),
            Quaternion,
        ],
        _ => Vec::new(),
    }
}
