//! Small exact linear algebra over `Q` and `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::symbolic::Q;

/// Reduced row echelon form of a rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn new(rows: &[Vec<Q>], ncols: usize) -> Self {
        let mut m: Vec<Vec<Q>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = Q::one() / m[r][c].clone();
            for x in m[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..ncols {
                        let v = m[r][j].clone() * f.clone();
                        m[i][j] = m[i][j].clone() - v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        Rref { rows: m, pivots, ncols }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of `v` in the basis `rows`, or `None` if `v` is outside
    /// the row space.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            for (x, r) in residual.iter_mut().zip(row) {
                *x = x.clone() - c.clone() * r.clone();
            }
        }
        residual.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Basis of `{x : row . x = 0 for all rows}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.ncols];
                v[f] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    Rref::new(rows, ncols).rank()
}

/// Scales a nonzero rational vector to a primitive integer vector whose
/// first nonzero entry is positive. Returns the vector and the factor used.
pub fn primitive(v: &[Q]) -> Option<(Vec<BigInt>, Q)> {
    let first = v.iter().find(|x| !x.is_zero())?;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut factor = Q::new(lcm, g.clone());
    if first.is_negative() {
        factor = -factor;
    }
    let out = v.iter().map(|x| (x * factor.clone()).to_integer()).collect();
    Some((out, factor))
}

/// Rank of an integer matrix reduced modulo a prime `p`.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..ncols {
                    let sub = mul_mod(m[r][j], f, p);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Residue of an integer in `[0, m)`.
pub fn residue(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue fits in u64")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::poly::{q, qf};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn braid_normals_span_three_space() {
        let rows = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(rank(&rows, 3), 3);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let rows = m(&[&[1, 1, 0], &[1, -1, 0]]);
        let rr = Rref::new(&rows, 3);
        let ns = rr.nullspace();
        assert_eq!(ns, vec![vec![q(0), q(0), q(1)]]);
    }

    #[test]
    fn coordinates_in_row_space() {
        let rows = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let rr = Rref::new(&rows, 3);
        assert!(rr.contains(&[q(1), q(2), q(1)]));
        assert!(!rr.contains(&[q(0), q(0), q(1)]));
    }

    #[test]
    fn primitive_vectors() {
        let (v, f) = primitive(&[qf(-1, 2), q(1)]).unwrap();
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(-2)]);
        assert_eq!(f, q(-2));
        assert!(primitive(&[q(0)]).is_none());
    }

    #[test]
    fn modular_rank_drops_on_collision() {
        // x and x + 2y coincide mod 2
        assert_eq!(rank_mod_p(&[vec![1, 0], vec![1, 2]], 2), 1);
        assert_eq!(rank_mod_p(&[vec![1, 0], vec![1, 2]], 3), 2);
    }
}
