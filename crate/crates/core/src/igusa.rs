//! Igusa's p-adic zeta function of a central arrangement at primes of good
//! reduction, a brute-force enclosure by residue enumeration, and the
//! `p -> 1` comparison with the topological zeta function.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Arrangement, ArrangementKey};
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, supports_mod_p, IntersectionLattice};
use crate::linalg::{is_prime, rank_mod_p, residue};
use crate::symbolic::factored_t::{p_pow, pow_q};
use crate::symbolic::{specialize_p_to_1, FactoredS, FactoredT, GeometricAtom, Poly, PrimeSpecialized, Qp, Q};
use crate::topzeta::{ser_q, zeta_top};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionFailure {
    pub what: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodReductionCheck {
    pub prime: u64,
    pub ok: bool,
    pub failures: Vec<ReductionFailure>,
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Compares the lattice over `F_p` with the rational one.
pub fn good_reduction(a: &Arrangement, p: u64) -> Result<GoodReductionCheck> {
    require_prime(p)?;
    let l = build_lattice(a)?;
    let normals: Vec<Vec<u64>> = a
        .hyperplanes()
        .iter()
        .map(|h| h.int_normal().iter().map(|x| residue(x, p)).collect())
        .collect();
    let mut failures = Vec::new();
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            if rank_mod_p(&[normals[i].clone(), normals[j].clone()], p) < 2 {
                failures.push(ReductionFailure {
                    what: format!("hyperplanes {i} and {j}"),
                    reason: format!("coincide mod {p}"),
                });
            }
        }
    }
    for e in l.edges().iter().skip(1) {
        let rows: Vec<Vec<u64>> = e.support.iter().map(|&i| normals[i].clone()).collect();
        let r = rank_mod_p(&rows, p);
        if r != e.codim {
            failures.push(ReductionFailure {
                what: format!("edge {} {:?}", e.id, e.support),
                reason: format!("rank {r} mod {p}, codimension {}", e.codim),
            });
        }
    }
    let rational: BTreeSet<Vec<usize>> = l.edges().iter().map(|e| e.support.clone()).collect();
    for (support, r) in supports_mod_p(a, p) {
        if !rational.contains(&support) {
            failures.push(ReductionFailure {
                what: format!("support {support:?}"),
                reason: format!("extra edge of codimension {r} mod {p}"),
            });
        }
    }
    Ok(GoodReductionCheck { prime: p, ok: failures.is_empty(), failures })
}

/// `N_X(p)`: points of `X` over `F_p` lying on no smaller edge, as
/// polynomials in `p` indexed by edge id.
pub fn stratum_counts(l: &IntersectionLattice) -> Vec<Poly<Q>> {
    (0..l.len())
        .map(|x| {
            let mut c = Poly::zero();
            for (y, mu) in l.upper_mobius(x) {
                c = &c + &Poly::monomial(Q::from_integer(mu.into()), l.edge(y).dim);
            }
            c
        })
        .collect()
}

/// `chi(U)` from the point count of the complement: `N_ambient(q)/(q-1)` at
/// `q = 1`.
pub fn euler_from_point_count(l: &IntersectionLattice) -> Result<i64> {
    let n0 = &stratum_counts(l)[0];
    let (quot, rem) = n0.div_rem(&Poly::linear(Q::one(), -Q::one()));
    if !rem.is_zero() {
        return Err(Error::NotCentral);
    }
    let v = quot.eval(&Q::one());
    i64::try_from(v.to_integer()).map_err(|_| Error::NotCentral)
}

fn memo() -> &'static DashMap<ArrangementKey, FactoredT> {
    static MEMO: OnceLock<DashMap<ArrangementKey, FactoredT>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// Integral of `|f|^s` over the integer polydisc with `p` kept symbolic,
/// valid at every prime of good reduction.
pub fn igusa_zeta(a: &Arrangement) -> Result<FactoredT> {
    a.require_central()?;
    let (ess, _) = a.essentialize()?;
    Ok(igusa_essential(&ess))
}

fn igusa_essential(a: &Arrangement) -> FactoredT {
    if a.is_empty() {
        return FactoredT::one();
    }
    let key = a.canonical_key().expect("central");
    if let Some(z) = memo().get(&key) {
        return z.clone();
    }
    let l = build_lattice(a).expect("central");
    let m = a.dim() as i64;
    let counts = stratum_counts(&l);
    let mut sum = FactoredT::zero();
    for x in 0..l.center_id() {
        let n_x = Qp::from_poly(counts[x].clone()) * p_pow(-m);
        let sub = igusa_essential(&l.localized(a, x));
        let term = FactoredT::monomial(n_x, l.edge(x).a_w as usize).mul(&sub);
        sum = sum.add(&term);
    }
    let z = sum.mul(&FactoredT::inv_atom(GeometricAtom::new(a.degree(), m as u32)));
    memo().insert(key, z.clone());
    z
}

/// Integral over the polydisc of the maximal ideal: `p^-n t^d Z`.
pub fn igusa_zeta_local(a: &Arrangement) -> Result<FactoredT> {
    let z = igusa_zeta(a)?;
    Ok(FactoredT::monomial(p_pow(-(a.dim() as i64)), a.degree() as usize).mul(&z))
}

/// The zeta function at a concrete prime, rejecting bad reduction.
pub fn igusa_zeta_at_prime(a: &Arrangement, p: u64, local: bool) -> Result<PrimeSpecialized> {
    if !good_reduction(a, p)?.ok {
        return Err(Error::BadReduction(p));
    }
    let z = if local { igusa_zeta_local(a)? } else { igusa_zeta(a)? };
    Ok(z.at_prime(p))
}

pub fn pole_real_parts(z: &FactoredT) -> Vec<Q> {
    z.pole_real_parts()
}

/// Upper bound on `p^(k n)` for residue enumeration.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    pub prime: u64,
    pub depth: u32,
    pub s: u32,
    #[serde(serialize_with = "ser_q")]
    pub lower: Q,
    #[serde(serialize_with = "ser_q")]
    pub upper: Q,
}

impl Enclosure {
    pub fn contains(&self, x: &Q) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn width(&self) -> Q {
        &self.upper - &self.lower
    }
}

/// Encloses the integral at `t = p^-s` by summing over residues mod `p^k`.
/// Balls where every form has valuation below `k` contribute exactly; the
/// rest contribute between zero and the bound from the known valuations.
pub fn brute_force_igusa(a: &Arrangement, p: u64, k: u32, s: u32) -> Result<Enclosure> {
    a.require_central()?;
    require_prime(p)?;
    if k == 0 || s == 0 {
        return Err(Error::InvalidExponent(format!("depth {k} and s {s} must be positive")));
    }
    let n = a.dim();
    let modulus = (p as u128).checked_pow(k).ok_or(Error::Infeasible { p, k, n })?;
    let total = modulus.checked_pow(n as u32).filter(|&t| t <= BRUTE_FORCE_LIMIT).ok_or(Error::Infeasible { p, k, n })?;
    let pk = modulus as u64;
    let forms: Vec<(Vec<u64>, u64)> = a
        .hyperplanes()
        .iter()
        .map(|h| (h.int_normal().iter().map(|x| residue(x, pk)).collect(), h.mult() as u64))
        .collect();
    let tally = (0..total as u64)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<(u64, bool), u64>, idx| {
            let mut x = vec![0u64; n];
            let mut r = idx;
            for xi in x.iter_mut() {
                *xi = r % pk;
                r /= pk;
            }
            let mut exp = 0u64;
            let mut exact = true;
            for (normal, m) in &forms {
                let v = normal.iter().zip(&x).fold(0u128, |s, (c, xi)| (s + *c as u128 * *xi as u128) % pk as u128) as u64;
                let val = valuation(v, p, k);
                if val >= k {
                    exact = false;
                }
                exp += m * val as u64;
            }
            *acc.entry((exp, exact)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (key, c) in b {
                *a.entry(key).or_insert(0) += c;
            }
            a
        });
    let pq = Q::from_integer(BigInt::from(p));
    let vol = pow_q(&pq, -((k as i64) * n as i64));
    let mut lower = Q::zero();
    let mut upper = Q::zero();
    for ((exp, exact), count) in tally {
        let c = Q::from_integer(BigInt::from(count)) * pow_q(&pq, -(exp as i64 * s as i64)) * vol.clone();
        if exact {
            lower += c.clone();
        }
        upper += c;
    }
    Ok(Enclosure { prime: p, depth: k, s, lower, upper })
}

fn valuation(v: u64, p: u64, k: u32) -> u32 {
    if v == 0 {
        return k;
    }
    let mut v = v;
    let mut e = 0;
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    e
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bridge {
    pub igusa: FactoredT,
    pub limit: FactoredS,
    pub top: FactoredS,
}

/// Checks that the `p -> 1` limit of the symbolic Igusa zeta function is the
/// topological zeta function.
pub fn specialization_bridge(a: &Arrangement) -> Result<Bridge> {
    let igusa = igusa_zeta(a)?;
    let limit = specialize_p_to_1(&igusa)?;
    let top = zeta_top(a)?;
    if limit != top {
        return Err(Error::BridgeMismatch { limit: limit.to_string(), top: top.to_string() });
    }
    Ok(Bridge { igusa, limit, top })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_arrangement;
    use crate::symbolic::poly::{q, qf};

    fn arr(s: &str) -> Arrangement {
        parse_arrangement(s).unwrap()
    }

    fn line_zeta(a: u32) -> FactoredT {
        FactoredT::inv_atom(GeometricAtom::new(a, 1)).scale(&(Qp::one() - p_pow(-1)))
    }

    #[test]
    fn closed_forms() {
        assert_eq!(igusa_zeta(&arr("n=1; x")).unwrap(), line_zeta(1));
        assert_eq!(igusa_zeta(&arr("n=1; x^2")).unwrap(), line_zeta(2));
        let x = line_zeta(1);
        assert_eq!(igusa_zeta(&arr("n=2; x; y")).unwrap(), x.mul(&x));
    }

    #[test]
    fn normalization() {
        for s in ["n=2; x; y; x+y", "n=3; x; y; z; x-y; x-z; y-z", "n=3; x^2; y; x+y+z"] {
            let z = igusa_zeta(&arr(s)).unwrap();
            for p in [2, 3, 5] {
                assert_eq!(z.eval(&q(p), &q(1)), Some(q(1)), "{s} at {p}");
            }
        }
    }

    #[test]
    fn counts() {
        let l = build_lattice(&arr("n=2; x; y; x+y")).unwrap();
        let c = stratum_counts(&l);
        // (p-1)(p-2)
        assert_eq!(c[0], Poly::new(vec![q(2), q(-3), q(1)]));
        let total = c.iter().fold(Poly::zero(), |acc, x| &acc + x);
        assert_eq!(total, Poly::monomial(q(1), 2));
        assert_eq!(euler_from_point_count(&l).unwrap(), -1);
    }

    #[test]
    fn reduction() {
        assert!(good_reduction(&arr("n=2; x; y; x+y"), 2).unwrap().ok);
        assert!(!good_reduction(&arr("n=2; x; y; x+2y"), 2).unwrap().ok);
        assert!(good_reduction(&arr("n=3; x; y; z; x-y; x-z; y-z"), 5).unwrap().ok);
        assert!(good_reduction(&arr("n=2; x"), 4).is_err());
        assert_eq!(igusa_zeta_at_prime(&arr("n=2; x; y; x+2y"), 2, false), Err(Error::BadReduction(2)));
    }

    #[test]
    fn brute_force_contains_exact() {
        let b = brute_force_igusa(&arr("n=1; x"), 3, 2, 1).unwrap();
        assert!(b.contains(&qf(3, 4)));
        let b = brute_force_igusa(&arr("n=2; x; y"), 3, 3, 1).unwrap();
        assert!(b.contains(&qf(9, 16)));
        let a = arr("n=2; x; y; x+y");
        let exact = igusa_zeta(&a).unwrap().eval(&q(3), &qf(1, 3)).unwrap();
        let b = brute_force_igusa(&a, 3, 4, 1).unwrap();
        assert!(b.contains(&exact), "{exact} not in [{}, {}]", b.lower, b.upper);
        assert!(brute_force_igusa(&arr("n=4; x"), 11, 4, 1).is_err());
    }

    #[test]
    fn bridge() {
        for s in ["n=1; x", "n=2; x; y", "n=2; x; y; x+y", "n=3; x; y; z; x-y; x-z; y-z"] {
            specialization_bridge(&arr(s)).unwrap();
        }
        let b = specialization_bridge(&arr("n=2; x; y; x+y")).unwrap();
        assert_eq!(b.top.to_string(), "(-s + 2) / ((s + 1)*(3*s + 2))");
    }

    #[test]
    fn local_variant() {
        let z = igusa_zeta_local(&arr("n=1; x")).unwrap();
        let expect = FactoredT::monomial(p_pow(-1), 1).mul(&line_zeta(1));
        assert_eq!(z, expect);
    }
}
