//! Roots of Bernstein-Sato polynomials that can be certified from lattice
//! data alone: generic arrangements, arrangements of moderate type, and the
//! jumping-number criterion for planes in three-space.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, is_generic, nu_counts, IntersectionLattice};
use crate::symbolic::{fmt_q, Q};
use crate::topzeta::ser_q;

/// Roots of the b-function of a generic essential arrangement of `d`
/// reduced hyperplanes in dimension `n`. For `d = n` the arrangement is a
/// normal crossing and the only root is `-1`.
pub fn generic_bfunction_roots(n: usize, d: usize) -> Result<BTreeSet<Q>> {
    if d < n {
        return Err(Error::DegreeBelowDimension { n, d });
    }
    if n == 0 {
        return Err(Error::WrongDimension { expected: 1, got: 0 });
    }
    if d == n {
        return Ok(BTreeSet::from([Q::from_integer((-1).into())]));
    }
    let d = d as i64;
    let n = n as i64;
    Ok((0..=2 * d - n - 2).map(|i| Q::new((-(i + n)).into(), d.into())).collect())
}

fn ratio(codim: usize, a_w: u32) -> Q {
    Q::new((codim as i64).into(), (a_w as i64).into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModerateViolation {
    /// The smaller edge `W`.
    pub inner: usize,
    /// The dense edge `W'` containing it.
    pub outer: usize,
    #[serde(serialize_with = "ser_q")]
    pub inner_ratio: Q,
    #[serde(serialize_with = "ser_q")]
    pub outer_ratio: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModerateReport {
    pub moderate: bool,
    pub violation: Option<ModerateViolation>,
}

/// `codim W / a_W <= codim W' / a_W'` for all dense edges `W` inside `W'`.
pub fn is_moderate_in(l: &IntersectionLattice) -> ModerateReport {
    let dense: Vec<usize> = l.dense_edges();
    for &w in dense.iter().rev() {
        let ew = l.edge(w);
        let rw = ratio(ew.codim, ew.a_w);
        for &v in &dense {
            if v == w || !l.leq(v, w) {
                continue;
            }
            let ev = l.edge(v);
            let rv = ratio(ev.codim, ev.a_w);
            if rw > rv {
                return ModerateReport {
                    moderate: false,
                    violation: Some(ModerateViolation { inner: w, outer: v, inner_ratio: rw, outer_ratio: rv }),
                };
            }
        }
    }
    ModerateReport { moderate: true, violation: None }
}

pub fn is_moderate(a: &Arrangement) -> Result<ModerateReport> {
    Ok(is_moderate_in(&build_lattice(a)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpingVerdict {
    pub degree: usize,
    /// Number of points of multiplicity `m` with `2d/3 < m <= d`.
    pub heavy_points: usize,
    /// Whether `3/d` is a jumping number.
    pub jumping: bool,
}

/// Decides whether `3/d` is a jumping number for a reduced essential
/// arrangement of `d >= 5` planes in three-space.
pub fn jumping_3d_criterion(a: &Arrangement) -> Result<JumpingVerdict> {
    let nu = nu_counts(a)?;
    let d = a.len();
    if d < 5 {
        return Err(Error::TooFewHyperplanes { min: 5, got: d });
    }
    let heavy_points = nu.iter().filter(|(&m, _)| 3 * m > 2 * d && m <= d).map(|(_, &c)| c).sum();
    Ok(JumpingVerdict { degree: d, heavy_points, jumping: heavy_points != 1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    VerifiedGeneric,
    VerifiedModerate,
    VerifiedDim3Jumping,
    Conditional,
}

impl Status {
    pub fn is_verified(&self) -> bool {
        !matches!(self, Status::Conditional)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeStatus {
    pub edge_id: usize,
    pub codim: usize,
    pub a_w: u32,
    #[serde(serialize_with = "ser_q")]
    pub candidate: Q,
    pub status: Status,
    pub evidence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literature: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub generic: Option<bool>,
    pub moderate: ModerateReport,
    pub edges: Vec<EdgeStatus>,
}

impl ConjectureReport {
    pub fn all_verified(&self) -> bool {
        self.edges.iter().all(|e| e.status.is_verified())
    }

    /// Attaches a literature note to the edges with the given candidate.
    pub fn annotate(&mut self, candidate: &Q, note: &str) {
        for e in self.edges.iter_mut().filter(|e| &e.candidate == candidate) {
            e.literature = Some(note.to_string());
        }
    }
}

fn generic_evidence(n: usize, d: u32) -> String {
    format!("generic arrangement of {d} hyperplanes in dimension {n}: root -{}", fmt_q(&ratio(n, d)))
}

/// Classifies the candidate root `-codim W / a_W` of every dense edge.
pub fn conjecture_report(a: &Arrangement) -> Result<ConjectureReport> {
    let l = build_lattice(a)?;
    let generic = if a.is_reduced() { Some(is_generic(a)?.generic) } else { None };
    let moderate = is_moderate_in(&l);
    let mut edges = Vec::new();
    for w in l.dense_edges() {
        let e = l.edge(w);
        let candidate = -ratio(e.codim, e.a_w);
        let (status, evidence) = if generic == Some(true) {
            (Status::VerifiedGeneric, generic_evidence(e.codim, e.a_w))
        } else if moderate.moderate {
            (Status::VerifiedModerate, "arrangement is of moderate type".to_string())
        } else {
            classify_local(&l.localized(a, w))?
        };
        edges.push(EdgeStatus { edge_id: w, codim: e.codim, a_w: e.a_w, candidate, status, evidence, literature: None });
    }
    Ok(ConjectureReport { generic, moderate, edges })
}

fn classify_local(aw: &Arrangement) -> Result<(Status, String)> {
    if aw.is_reduced() && is_generic(aw)?.generic {
        return Ok((Status::VerifiedGeneric, generic_evidence(aw.dim(), aw.degree())));
    }
    if is_moderate(aw)?.moderate {
        return Ok((Status::VerifiedModerate, "localized arrangement is of moderate type".to_string()));
    }
    if aw.dim() == 3 && aw.is_reduced() && aw.len() >= 5 {
        let v = jumping_3d_criterion(aw)?;
        if v.jumping {
            let ev = format!("{} points of multiplicity above 2d/3, so 3/{} is a jumping number", v.heavy_points, v.degree);
            return Ok((Status::VerifiedDim3Jumping, ev));
        }
        let ev = format!("one point of multiplicity above 2d/3, so 3/{} is not a jumping number", v.degree);
        return Ok((Status::Conditional, ev));
    }
    Ok((Status::Conditional, "no lattice criterion applies".to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_arrangement;
    use crate::symbolic::poly::{q, qf};

    fn arr(s: &str) -> Arrangement {
        parse_arrangement(s).unwrap()
    }

    const BMT: &str = "n=3; x;y;x+y;x-y;x+2y;x+3y;x+4y;2y+z;x+2y+z;z";

    #[test]
    fn generic_roots() {
        let r = generic_bfunction_roots(3, 4).unwrap();
        assert_eq!(r, BTreeSet::from([qf(-3, 4), q(-1), qf(-5, 4), qf(-3, 2)]));
        let r = generic_bfunction_roots(2, 3).unwrap();
        assert_eq!(r, BTreeSet::from([qf(-2, 3), q(-1), qf(-4, 3)]));
        assert_eq!(generic_bfunction_roots(2, 2).unwrap(), BTreeSet::from([q(-1)]));
        assert!(generic_bfunction_roots(3, 2).is_err());
    }

    #[test]
    fn braid_is_moderate() {
        let a = arr("n=3; x; y; z; x-y; x-z; y-z");
        assert!(is_moderate(&a).unwrap().moderate);
        let rep = conjecture_report(&a).unwrap();
        assert!(rep.edges.iter().all(|e| e.status == Status::VerifiedModerate));
        let vals: BTreeSet<Q> = rep.edges.iter().map(|e| e.candidate.clone()).collect();
        assert_eq!(vals, BTreeSet::from([q(-1), qf(-2, 3), qf(-1, 2)]));
    }

    #[test]
    fn ten_planes_violation() {
        let a = arr(BMT);
        let m = is_moderate(&a).unwrap();
        let v = m.violation.unwrap();
        let l = build_lattice(&a).unwrap();
        assert_eq!(v.inner, l.center_id());
        assert_eq!(l.edge(v.outer).support.len(), 7);
        assert_eq!((v.inner_ratio, v.outer_ratio), (qf(3, 10), qf(2, 7)));
        let j = jumping_3d_criterion(&a).unwrap();
        assert!(!j.jumping);
        let rep = conjecture_report(&a).unwrap();
        let origin = rep.edges.iter().find(|e| e.edge_id == l.center_id()).unwrap();
        assert_eq!(origin.status, Status::Conditional);
    }

    #[test]
    fn generic_four_planes() {
        let rep = conjecture_report(&arr("n=3; x; y; z; x+y+z")).unwrap();
        let origin = rep.edges.iter().find(|e| e.codim == 3).unwrap();
        assert_eq!(origin.status, Status::VerifiedGeneric);
        assert_eq!(origin.candidate, qf(-3, 4));
    }

    #[test]
    fn jumping_criterion() {
        assert!(!jumping_3d_criterion(&arr("n=3; x;y;x-y;x+y;x+z")).unwrap().jumping);
        assert!(jumping_3d_criterion(&arr("n=3; x; y; z; x-y; x-z; y-z")).unwrap().jumping);
        assert!(jumping_3d_criterion(&arr("n=3; x; y; z; x+y+z")).is_err());
    }
}
