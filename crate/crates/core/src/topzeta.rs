//! Local topological zeta function at the origin, candidate poles from
//! dense edges, eigenvalue certificates and the monodromy zeta function.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use serde::Serialize;

use crate::arrangement::{Arrangement, ArrangementKey};
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, proj_complement_euler, IntersectionLattice};
use crate::symbolic::{fmt_q, FactoredS, Q};

fn memo() -> &'static DashMap<ArrangementKey, FactoredS> {
    static MEMO: OnceLock<DashMap<ArrangementKey, FactoredS>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

fn inv_linear(a: u32, b: usize) -> FactoredS {
    FactoredS::inv_linear(a as i64, b as i64).expect("positive atom")
}

/// `Z_top` of a central arrangement at the origin, by blowing up the origin
/// and recursing into the arrangements transversal to each stratum.
pub fn zeta_top(a: &Arrangement) -> Result<FactoredS> {
    a.require_central()?;
    let (ess, _) = a.essentialize()?;
    Ok(zeta_essential(&ess))
}

fn zeta_essential(a: &Arrangement) -> FactoredS {
    if a.is_empty() {
        return FactoredS::one();
    }
    let key = a.canonical_key().expect("central");
    if let Some(z) = memo().get(&key) {
        return z.clone();
    }
    let l = build_lattice(a).expect("central");
    let mut sum = FactoredS::zero();
    for w in 0..l.center_id() {
        let chi = l.stratum_proj_euler(w);
        if chi == 0 {
            continue;
        }
        let sub = zeta_essential(&l.localized(a, w));
        sum = sum.add(&sub.scale(&Q::from_integer(chi.into())));
    }
    let z = sum.mul(&inv_linear(a.degree(), a.dim()));
    memo().insert(key, z.clone());
    z
}

pub fn zeta_top_at_point(a: &Arrangement, x0: &[Q]) -> Result<FactoredS> {
    zeta_top(&a.localize_at(x0)?)
}

fn require_essential(a: &Arrangement, dim: usize) -> Result<()> {
    if a.dim() != dim {
        return Err(Error::WrongDimension { expected: dim, got: a.dim() });
    }
    if !a.is_essential() {
        return Err(Error::NotEssential);
    }
    Ok(())
}

/// Direct evaluation on the resolution given by one blowup of the origin,
/// for an essential central arrangement of lines in the plane.
pub fn zeta_top_direct_2d(a: &Arrangement) -> Result<FactoredS> {
    require_essential(a, 2)?;
    let e = inv_linear(a.degree(), 2);
    let r = a.len() as i64;
    let mut z = e.scale(&Q::from_integer((2 - r).into()));
    for h in a.hyperplanes() {
        z = z.add(&e.mul(&inv_linear(h.mult(), 1)));
    }
    Ok(z)
}

/// Direct evaluation on the resolution obtained by blowing up the origin and
/// then the lines lying on at least three planes, in dimension three.
pub fn zeta_top_direct_3d(a: &Arrangement) -> Result<FactoredS> {
    require_essential(a, 3)?;
    let l = build_lattice(a)?;
    let hs = a.hyperplanes();
    let e0 = inv_linear(a.degree(), 3);
    let chi_u = proj_complement_euler(&l)?;
    let mut inner = FactoredS::constant(Q::from_integer(chi_u.into()));
    let mut points_on = vec![0i64; hs.len()];
    for w in l.edges().iter().filter(|e| e.codim == 2) {
        for &j in &w.support {
            points_on[j] += 1;
        }
        if w.support.len() >= 3 {
            let ew = inv_linear(w.a_w, 2);
            let open = 2 - w.support.len() as i64;
            inner = inner.add(&ew.scale(&Q::from_integer(open.into())));
            for &j in &w.support {
                inner = inner.add(&ew.mul(&inv_linear(hs[j].mult(), 1)));
            }
        } else {
            let (i, j) = (w.support[0], w.support[1]);
            inner = inner.add(&inv_linear(hs[i].mult(), 1).mul(&inv_linear(hs[j].mult(), 1)));
        }
    }
    for (j, h) in hs.iter().enumerate() {
        inner = inner.add(&inv_linear(h.mult(), 1).scale(&Q::from_integer((2 - points_on[j]).into())));
    }
    Ok(e0.mul(&inner))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidatePole {
    pub edge_id: usize,
    pub codim: usize,
    pub a_w: u32,
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
}

pub(crate) fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

/// `-codim W / a_W` for every dense edge `W`.
pub fn candidate_poles_in(l: &IntersectionLattice) -> Vec<CandidatePole> {
    l.edges()
        .iter()
        .filter(|e| e.dense)
        .map(|e| CandidatePole {
            edge_id: e.id,
            codim: e.codim,
            a_w: e.a_w,
            value: -Q::new((e.codim as i64).into(), (e.a_w as i64).into()),
        })
        .collect()
}

pub fn candidate_poles(a: &Arrangement) -> Result<Vec<CandidatePole>> {
    Ok(candidate_poles_in(&build_lattice(a)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Justification {
    /// The pole equals `-codim W / a_W` for a dense edge `W`, and the local
    /// Milnor fiber of `A_W` carries `exp(2 pi i c)` as an eigenvalue.
    DenseEdgeMilnorFiber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueCertificate {
    #[serde(serialize_with = "ser_q")]
    pub pole: Q,
    pub witness_edge: usize,
    pub witnesses: Vec<usize>,
    /// `c mod 1` in `[0, 1)`.
    #[serde(serialize_with = "ser_q")]
    pub eigenvalue_class: Q,
    pub witness_euler: i64,
    pub justification: Justification,
}

pub fn frac(x: &Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

/// One certificate per pole of `Z_top`; a pole without a dense witness is an
/// error.
pub fn certify_poles(a: &Arrangement) -> Result<Vec<EigenvalueCertificate>> {
    let z = zeta_top(a)?;
    let l = build_lattice(a)?;
    let cands = candidate_poles_in(&l);
    let mut out = Vec::new();
    for (pole, _) in z.poles() {
        let witnesses: Vec<usize> = cands.iter().filter(|c| c.value == pole).map(|c| c.edge_id).collect();
        let Some(&w) = witnesses.first() else {
            return Err(Error::MissingWitness { pole: fmt_q(&pole) });
        };
        let sub = l.localized(a, w);
        let witness_euler = proj_complement_euler(&build_lattice(&sub)?)?;
        if witness_euler == 0 {
            return Err(Error::MissingWitness { pole: fmt_q(&pole) });
        }
        out.push(EigenvalueCertificate {
            eigenvalue_class: frac(&pole),
            pole,
            witness_edge: w,
            witnesses,
            witness_euler,
            justification: Justification::DenseEdgeMilnorFiber,
        });
    }
    Ok(out)
}

/// `(1 - t^d)^chi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyZeta {
    pub degree: u32,
    pub exponent: i64,
}

impl fmt::Display for MonodromyZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exponent, self.degree) {
            (0, _) => write!(f, "1"),
            (e, 1) => write!(f, "(1 - t)^{e}"),
            (e, d) => write!(f, "(1 - t^{d})^{e}"),
        }
    }
}

pub fn monodromy_zeta(a: &Arrangement) -> Result<MonodromyZeta> {
    if !a.is_essential() {
        return Err(if a.is_central() { Error::NotEssential } else { Error::NotCentral });
    }
    let chi = proj_complement_euler(&build_lattice(a)?)?;
    Ok(MonodromyZeta { degree: a.degree(), exponent: chi })
}

/// Classes `k/d mod 1` of the monodromy eigenvalues of an indecomposable
/// arrangement.
pub fn eigenvalue_set(a: &Arrangement) -> Result<BTreeSet<Q>> {
    let m = monodromy_zeta(a)?;
    if m.exponent == 0 {
        return Err(Error::Decomposable);
    }
    let d = m.degree as i64;
    Ok((1..=d).map(|k| frac(&Q::new(k.into(), d.into()))).collect())
}
