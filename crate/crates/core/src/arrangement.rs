//! Arrangement data model: normalization, localization at a point, and
//! essentialization.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{primitive, Rref};
use crate::symbolic::{fmt_q, Q};

/// `{x : normal . x = offset}` counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Q>,
    offset: Q,
    mult: u32,
}

impl Hyperplane {
    /// Normalizes the equation. Errors with `ZeroNormal(0)` on a zero normal;
    /// callers that know the index remap it.
    pub fn new(normal: Vec<Q>, offset: Q, mult: u32) -> Result<Self> {
        let (ints, factor) = primitive(&normal).ok_or(Error::ZeroNormal(0))?;
        Ok(Hyperplane {
            normal: ints.into_iter().map(Q::from_integer).collect(),
            offset: offset * factor,
            mult: mult.max(1),
        })
    }

    pub fn normal(&self) -> &[Q] {
        &self.normal
    }

    /// Normal as primitive integers.
    pub fn int_normal(&self) -> Vec<BigInt> {
        self.normal.iter().map(|x| x.to_integer()).collect()
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    pub fn mult(&self) -> u32 {
        self.mult
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        dot(&self.normal, x) == self.offset
    }

    fn same_locus(&self, other: &Hyperplane) -> bool {
        self.normal == other.normal && self.offset == other.offset
    }
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Validates and normalizes; proportional equations are merged with
    /// summed multiplicities, keeping the first occurrence's position.
    pub fn new(dim: usize, raw: Vec<(Vec<Q>, Q, u32)>) -> Result<Self> {
        let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(raw.len());
        for (i, (normal, offset, mult)) in raw.into_iter().enumerate() {
            if normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: normal.len() });
            }
            let h = Hyperplane::new(normal, offset, mult).map_err(|_| Error::ZeroNormal(i))?;
            match hyperplanes.iter_mut().find(|g| g.same_locus(&h)) {
                Some(g) => g.mult += h.mult,
                None => hyperplanes.push(h),
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    fn from_normalized(dim: usize, hyperplanes: Vec<Hyperplane>) -> Self {
        Arrangement { dim, hyperplanes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Total degree `d`: the sum of multiplicities.
    pub fn degree(&self) -> u32 {
        self.hyperplanes.iter().map(|h| h.mult).sum()
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.offset.is_zero())
    }

    pub fn is_reduced(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.mult == 1)
    }

    pub fn normals(&self) -> Vec<Vec<Q>> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    pub fn rank(&self) -> usize {
        Rref::new(&self.normals(), self.dim).rank()
    }

    /// Central with trivial center.
    pub fn is_essential(&self) -> bool {
        self.is_central() && self.rank() == self.dim
    }

    pub fn require_central(&self) -> Result<()> {
        if self.is_central() {
            Ok(())
        } else {
            Err(Error::NotCentral)
        }
    }

    /// Same hyperplanes with every multiplicity set to one.
    pub fn reduced(&self) -> Arrangement {
        let hs = self.hyperplanes.iter().map(|h| Hyperplane { mult: 1, ..h.clone() }).collect();
        Arrangement::from_normalized(self.dim, hs)
    }

    /// Sub-arrangement on the given hyperplane indices, in the given order.
    pub fn subarrangement(&self, indices: &[usize]) -> Arrangement {
        let hs = indices.iter().map(|&i| self.hyperplanes[i].clone()).collect();
        Arrangement::from_normalized(self.dim, hs)
    }

    /// Central arrangement of the hyperplanes through `x0`, translated to
    /// the origin.
    pub fn localize_at(&self, x0: &[Q]) -> Result<Arrangement> {
        if x0.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x0.len() });
        }
        let hs = self
            .hyperplanes
            .iter()
            .filter(|h| h.contains_point(x0))
            .map(|h| Hyperplane { offset: Q::zero(), ..h.clone() })
            .collect();
        Ok(Arrangement::from_normalized(self.dim, hs))
    }

    /// Image in the quotient by the center, in coordinates given by the
    /// reduced row echelon basis of the span of the normals. Returns the
    /// essential arrangement and the dimension of the center.
    pub fn essentialize(&self) -> Result<(Arrangement, usize)> {
        self.require_central()?;
        let rref = Rref::new(&self.normals(), self.dim);
        let r = rref.rank();
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| {
                let coords = rref.coordinates(&h.normal).expect("normal lies in its own span");
                Hyperplane::new(coords, Q::zero(), h.mult).expect("nonzero image")
            })
            .collect();
        Ok((Arrangement::from_normalized(r, hs), self.dim - r))
    }

    /// Key identifying the essentialized arrangement up to reordering.
    pub fn canonical_key(&self) -> Result<ArrangementKey> {
        let (ess, _) = self.essentialize()?;
        let mut hs: Vec<(Vec<BigInt>, u32)> =
            ess.hyperplanes.iter().map(|h| (h.int_normal(), h.mult)).collect();
        hs.sort();
        Ok(ArrangementKey { dim: ess.dim, hyperplanes: hs })
    }

    /// Text form accepted by [`parse_arrangement`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.dim);
        for h in &self.hyperplanes {
            out.push_str(&format_hyperplane(h));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            n: self.dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| HyperplaneJson {
                    normal: h.normal.iter().map(fmt_q).collect(),
                    offset: fmt_q(&h.offset),
                    mult: h.mult,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrangementKey {
    pub dim: usize,
    pub hyperplanes: Vec<(Vec<BigInt>, u32)>,
}

/// Linear form of a hyperplane in `x1..xn` notation.
pub fn format_form(normal: &[Q]) -> String {
    let mut out = String::new();
    for (i, c) in normal.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Q::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&fmt_q(&a));
            out.push('*');
        }
        out.push_str(&format!("x{}", i + 1));
    }
    out
}

fn format_hyperplane(h: &Hyperplane) -> String {
    let mut s = format_form(&h.normal);
    if h.mult > 1 {
        s = format!("({s})^{}", h.mult);
    }
    if !h.offset.is_zero() {
        s.push_str(&format!(" = {}", fmt_q(&h.offset)));
    }
    s
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyperplanes.iter().map(format_hyperplane).collect();
        write!(f, "n={}; {}", self.dim, hs.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneJson {
    pub normal: Vec<String>,
    #[serde(default = "zero_string")]
    pub offset: String,
    #[serde(default = "one_u32")]
    pub mult: u32,
}

fn zero_string() -> String {
    "0".into()
}

fn one_u32() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub n: usize,
    pub hyperplanes: Vec<HyperplaneJson>,
}

/// Parses the text or JSON input format.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    if text.trim_start().starts_with('{') {
        let j: ArrangementJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        return from_json(&j);
    }
    crate::parse::parse_text(text)
}

pub fn from_json(j: &ArrangementJson) -> Result<Arrangement> {
    let mut raw = Vec::with_capacity(j.hyperplanes.len());
    for (i, h) in j.hyperplanes.iter().enumerate() {
        let normal = h
            .normal
            .iter()
            .map(|s| crate::parse::parse_rational(s).ok_or_else(|| bad_rational(i, s)))
            .collect::<Result<Vec<Q>>>()?;
        let offset = crate::parse::parse_rational(&h.offset).ok_or_else(|| bad_rational(i, &h.offset))?;
        if h.mult == 0 {
            return Err(Error::Parse { line: i + 1, msg: "multiplicity must be positive".into() });
        }
        raw.push((normal, offset, h.mult));
    }
    Arrangement::new(j.n, raw)
}

fn bad_rational(i: usize, s: &str) -> Error {
    Error::Parse { line: i + 1, msg: format!("`{s}` is not a rational number") }
}
