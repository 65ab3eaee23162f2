//! Intersection lattice of a central arrangement and its combinatorial
//! invariants.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{rank_mod_p, residue, Rref};
use crate::symbolic::{Poly, Q};

/// Fixed-width bit set over hyperplane indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    fn from_indices(len: usize, idx: &[usize]) -> Self {
        let mut w = vec![0u64; len.div_ceil(64).max(1)];
        for &i in idx {
            w[i / 64] |= 1 << (i % 64);
        }
        Bits(w)
    }

    pub(crate) fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn is_strict_subset(&self, other: &Bits) -> bool {
        self != other && self.is_subset(other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: usize,
    /// Every hyperplane containing the edge, sorted.
    pub support: Vec<usize>,
    pub dim: usize,
    pub codim: usize,
    pub a_w: u32,
    /// `mu(ambient, W)`.
    pub mobius: i64,
    pub dense: bool,
    #[serde(skip)]
    pub basis: Vec<Vec<Q>>,
}

/// Edges ordered by codimension, then by support. Index 0 is the ambient
/// space; the last edge is the center.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    ambient_dim: usize,
    edges: Vec<Edge>,
    bits: Vec<Bits>,
}

/// Closed supports and their ranks, found by saturation under `close`.
fn saturate<F>(nhyp: usize, close: F) -> Vec<(Vec<usize>, usize)>
where
    F: Fn(&[usize]) -> (Vec<usize>, usize),
{
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(Vec::new(), 0);
    queue.push_back(Vec::new());
    while let Some(s) = queue.pop_front() {
        for j in 0..nhyp {
            if s.binary_search(&j).is_ok() {
                continue;
            }
            let mut t = s.clone();
            t.push(j);
            t.sort_unstable();
            let (closed, r) = close(&t);
            if !seen.contains_key(&closed) {
                seen.insert(closed.clone(), r);
                queue.push_back(closed);
            }
        }
    }
    let mut out: Vec<(Vec<usize>, usize)> = seen.into_iter().collect();
    out.sort_by(|(a, ra), (b, rb)| ra.cmp(rb).then_with(|| a.cmp(b)));
    out
}

fn rational_closure(normals: &[Vec<Q>], dim: usize, s: &[usize]) -> (Vec<usize>, usize) {
    let rows: Vec<Vec<Q>> = s.iter().map(|&i| normals[i].clone()).collect();
    let rr = Rref::new(&rows, dim);
    let closed = (0..normals.len()).filter(|&j| rr.contains(&normals[j])).collect();
    (closed, rr.rank())
}

/// Closed supports of the arrangement's lattice over `F_p`, with ranks.
pub fn supports_mod_p(a: &Arrangement, p: u64) -> Vec<(Vec<usize>, usize)> {
    let normals: Vec<Vec<u64>> = a
        .hyperplanes()
        .iter()
        .map(|h| h.int_normal().iter().map(|x| residue(x, p)).collect())
        .collect();
    saturate(normals.len(), |s| {
        let rows: Vec<Vec<u64>> = s.iter().map(|&i| normals[i].clone()).collect();
        let r = rank_mod_p(&rows, p);
        let closed = (0..normals.len())
            .filter(|&j| {
                let mut ext = rows.clone();
                ext.push(normals[j].clone());
                rank_mod_p(&ext, p) == r
            })
            .collect();
        (closed, r)
    })
}

fn euler_of_terms(terms: impl Iterator<Item = (i64, usize)>) -> Result<i64> {
    let mut coeffs: Vec<Q> = Vec::new();
    for (mu, e) in terms {
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Q::zero());
        }
        let sign = if e % 2 == 0 { mu } else { -mu };
        coeffs[e] += Q::from_integer(sign.into());
    }
    let pi = Poly::new(coeffs);
    let (quot, rem) = pi.div_rem(&Poly::linear(Q::from_integer(1.into()), Q::from_integer(1.into())));
    if !rem.is_zero() || pi.degree().unwrap_or(0) == 0 {
        return Err(Error::NotCentral);
    }
    Ok(quot.eval(&Q::from_integer((-1).into())).to_integer().to_i64().expect("Euler characteristic fits in i64"))
}

pub fn build_lattice(a: &Arrangement) -> Result<IntersectionLattice> {
    a.require_central()?;
    let n = a.dim();
    let normals = a.normals();
    let supports = saturate(a.len(), |s| rational_closure(&normals, n, s));
    let mut edges = Vec::with_capacity(supports.len());
    let mut bits = Vec::with_capacity(supports.len());
    for (id, (support, codim)) in supports.into_iter().enumerate() {
        let rows: Vec<Vec<Q>> = support.iter().map(|&i| normals[i].clone()).collect();
        let basis = Rref::new(&rows, n).nullspace();
        let a_w = support.iter().map(|&i| a.hyperplanes()[i].mult()).sum();
        bits.push(Bits::from_indices(a.len(), &support));
        edges.push(Edge { id, support, dim: n - codim, codim, a_w, mobius: 0, dense: false, basis });
    }
    for x in 0..edges.len() {
        edges[x].mobius = if x == 0 {
            1
        } else {
            -(0..x).filter(|&y| bits[y].is_strict_subset(&bits[x])).map(|y| edges[y].mobius).sum::<i64>()
        };
    }
    let mut lat = IntersectionLattice { ambient_dim: n, edges, bits };
    for x in 1..lat.edges.len() {
        lat.edges[x].dense = lat.local_euler(x)? != 0;
    }
    Ok(lat)
}

impl IntersectionLattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn center(&self) -> &Edge {
        self.edges.last().expect("lattice has an ambient edge")
    }

    pub fn center_id(&self) -> usize {
        self.edges.len() - 1
    }

    /// Edge ids whose subspace contains edge `x` strictly (lower interval).
    pub fn below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..x).filter(move |&y| self.bits[y].is_strict_subset(&self.bits[x]))
    }

    /// Edge ids whose subspace is contained in edge `x`, including `x`.
    pub fn at_or_above(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (x..self.edges.len()).filter(move |&y| self.bits[x].is_subset(&self.bits[y]))
    }

    /// `W <= Y` in the lattice order: `Y` is a subspace of `W`.
    pub fn leq(&self, w: usize, y: usize) -> bool {
        self.bits[w].is_subset(&self.bits[y])
    }

    /// `mu(W, Y)` for every `Y >= W`, keyed by id.
    pub fn upper_mobius(&self, w: usize) -> BTreeMap<usize, i64> {
        let up: Vec<usize> = self.at_or_above(w).collect();
        let mut mu: BTreeMap<usize, i64> = BTreeMap::new();
        for &y in &up {
            let v = if y == w {
                1
            } else {
                -up.iter().take_while(|&&z| z < y).filter(|&&z| self.bits[z].is_strict_subset(&self.bits[y])).map(|z| mu[z]).sum::<i64>()
            };
            mu.insert(y, v);
        }
        mu
    }

    /// `chi` of the projective complement of the localization `A_W`.
    fn local_euler(&self, x: usize) -> Result<i64> {
        let terms = (0..=x)
            .filter(|&y| self.bits[y].is_subset(&self.bits[x]))
            .map(|y| (self.edges[y].mobius, self.edges[y].codim));
        euler_of_terms(terms)
    }

    pub fn dense_edges(&self) -> Vec<usize> {
        self.edges.iter().filter(|e| e.dense).map(|e| e.id).collect()
    }

    /// Euler characteristic of `P(W)` minus the projectivizations of the
    /// edges strictly inside `W`. At the center this is `dim W`, which is 1
    /// for a trivial center by convention.
    pub fn stratum_proj_euler(&self, w: usize) -> i64 {
        if w == self.center_id() {
            return self.edges[w].dim.max(1) as i64;
        }
        let codim = self.edges[w].codim;
        let mu = self.upper_mobius(w);
        euler_of_terms(mu.iter().map(|(&y, &m)| (m, self.edges[y].codim - codim)))
            .expect("upper interval of a non-center edge is a central arrangement")
    }

    /// Hyperplanes through `W`, as an arrangement in the quotient by `W`.
    pub fn localized(&self, a: &Arrangement, w: usize) -> Arrangement {
        let sub = a.subarrangement(&self.edges[w].support);
        sub.essentialize().expect("subarrangement of a central arrangement").0
    }

    pub fn hyperplane_edges(&self) -> Vec<usize> {
        self.edges.iter().filter(|e| e.codim == 1).map(|e| e.id).collect()
    }
}

/// `sum_X mu(X) (-t)^codim X`.
pub fn poincare_polynomial(l: &IntersectionLattice) -> Poly<Q> {
    let mut coeffs = vec![Q::zero(); l.ambient_dim + 1];
    for e in l.edges() {
        coeffs[e.codim] += Q::from_integer(e.mobius.abs().into());
    }
    Poly::new(coeffs)
}

/// `chi(U)` for `U` the complement of the arrangement in projective space.
pub fn proj_complement_euler(l: &IntersectionLattice) -> Result<i64> {
    euler_of_terms(l.edges().iter().map(|e| (e.mobius, e.codim)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericReport {
    pub generic: bool,
    pub essential: bool,
    /// Number of hyperplanes is at least the dimension.
    pub enough_hyperplanes: bool,
}

/// Every edge other than the origin lies on exactly `codim` hyperplanes.
pub fn is_generic(a: &Arrangement) -> Result<GenericReport> {
    if !a.is_reduced() {
        return Err(Error::NotReduced);
    }
    let l = build_lattice(a)?;
    let generic = l.edges().iter().filter(|e| e.dim > 0).all(|e| e.support.len() == e.codim);
    Ok(GenericReport { generic, essential: a.is_essential(), enough_hyperplanes: a.len() >= a.dim() })
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Connected components of the matroid of normals, as sorted index sets.
pub fn matroid_decompose(a: &Arrangement) -> Vec<Vec<usize>> {
    let normals = a.normals();
    let mut basis: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (i, v) in normals.iter().enumerate() {
        rows.push(v.clone());
        if Rref::new(&rows, a.dim()).rank() == rows.len() {
            basis.push(i);
        } else {
            rows.pop();
        }
    }
    let mut parent: Vec<usize> = (0..normals.len()).collect();
    for (i, v) in normals.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let coeffs = solve_in_basis(&rows, v);
        for (k, x) in coeffs.iter().enumerate() {
            if !x.is_zero() {
                let (ri, rb) = (find(&mut parent, i), find(&mut parent, basis[k]));
                parent[ri] = rb;
            }
        }
    }
    let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..normals.len() {
        let r = find(&mut parent, i);
        parts.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = parts.into_values().collect();
    out.sort();
    out
}

/// Coordinates of `c` in the independent vectors `basis`.
fn solve_in_basis(basis: &[Vec<Q>], c: &[Q]) -> Vec<Q> {
    let k = basis.len();
    let aug: Vec<Vec<Q>> = (0..c.len())
        .map(|r| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(c[r].clone());
            row
        })
        .collect();
    let rr = Rref::new(&aug, k + 1);
    let mut x = vec![Q::zero(); k];
    for (row, &p) in rr.rows.iter().zip(&rr.pivots) {
        if p < k {
            x[p] = row[k].clone();
        }
    }
    x
}

/// `m -> nu_m`: codimension-two edges of a reduced essential arrangement in
/// dimension three, counted by the number of planes through them.
pub fn nu_counts(a: &Arrangement) -> Result<BTreeMap<usize, usize>> {
    if a.dim() != 3 {
        return Err(Error::WrongDimension { expected: 3, got: a.dim() });
    }
    if !a.is_reduced() {
        return Err(Error::NotReduced);
    }
    if !a.is_essential() {
        return Err(Error::NotEssential);
    }
    let l = build_lattice(a)?;
    let mut nu = BTreeMap::new();
    for e in l.edges().iter().filter(|e| e.codim == 2) {
        *nu.entry(e.support.len()).or_insert(0) += 1;
    }
    Ok(nu)
}
