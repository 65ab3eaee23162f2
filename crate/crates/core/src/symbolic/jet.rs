//! Truncated Laurent series in `h` with coefficients in `Q(s)`, used to take
//! the `p = e^h, t = e^(-h s), h -> 0` limit of a zeta function in `t`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::factored_s::{FactoredS, LinearAtom};
use super::factored_t::{FactoredT, Qp};
use super::poly::{Poly, Q};
use super::ratfunc::RatFn;
use crate::error::{Error, Result};

type Qs = RatFn<Q>;

/// Jet order cap for the adaptive specialization loop.
pub const MAX_JET_ORDER: usize = 64;

/// `sum_{e >= val} c_e h^e`, known exactly below `prec` (`None` = exact).
#[derive(Clone, Debug, PartialEq)]
pub struct ExpJet {
    val: i64,
    coeffs: Vec<Qs>,
    prec: Option<i64>,
}

impl ExpJet {
    pub fn exact(val: i64, coeffs: Vec<Qs>) -> Self {
        ExpJet { val, coeffs, prec: None }.normalized()
    }

    pub fn constant(c: Qs) -> Self {
        Self::exact(0, vec![c])
    }

    /// `exp(c h)` for `c` a polynomial in `s`, keeping `order` terms.
    pub fn exp(c: &Poly<Q>, order: usize) -> Self {
        if c.is_zero() {
            return Self::constant(Qs::one());
        }
        let mut coeffs = Vec::with_capacity(order);
        let mut term = Poly::one();
        for k in 0..order {
            coeffs.push(Qs::from_poly(term.clone()));
            let kq = Q::from_integer((k as i64 + 1).into());
            term = (&term * c).scale(&(Q::one() / kq));
        }
        ExpJet { val: 0, coeffs, prec: Some(order as i64) }.normalized()
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    /// Coefficient of `h^e`; `None` when beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<Qs> {
        if self.prec.is_some_and(|p| e >= p) {
            return None;
        }
        if e < self.val {
            return Some(Qs::zero());
        }
        Some(self.coeffs.get((e - self.val) as usize).cloned().unwrap_or_else(Qs::zero))
    }

    fn top(&self) -> i64 {
        match self.prec {
            Some(p) => p,
            None => self.val + self.coeffs.len() as i64,
        }
    }

    fn normalized(mut self) -> Self {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead_zeros);
        self.val += lead_zeros as i64;
        if let Some(p) = self.prec {
            self.coeffs.truncate((p - self.val).max(0) as usize);
            if self.coeffs.is_empty() {
                self.val = self.val.min(p);
            }
        } else {
            while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                self.coeffs.pop();
            }
        }
        self
    }

    fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = Self::min_prec(self.prec, other.prec);
        let val = self.val.min(other.val);
        let top = match prec {
            Some(p) => p,
            None => self.top().max(other.top()),
        };
        let coeffs = (val..top)
            .map(|e| self.coeff(e).unwrap() + other.coeff(e).unwrap())
            .collect();
        ExpJet { val, coeffs, prec }.normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let val = self.val + other.val;
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(p), None) => Some(p + other.val),
            (None, Some(q)) => Some(q + self.val),
            (Some(p), Some(q)) => Some((p + other.val).min(q + self.val)),
        };
        let top = prec.unwrap_or(self.top() + other.top() - 1);
        let mut coeffs = vec![Qs::zero(); (top - val).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                coeffs[k] = coeffs[k].clone() + a.clone() * b.clone();
            }
        }
        ExpJet { val, coeffs, prec }.normalized()
    }

    /// Multiplicative inverse keeping `order` relative terms for exact input.
    pub fn inv(&self, order: usize) -> Result<Self> {
        let lead = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c.clone(),
            _ => return Err(Error::TruncationExhausted(order)),
        };
        let rel = match self.prec {
            Some(p) => ((p - self.val) as usize).min(order.max(1)),
            None => order.max(1),
        };
        let lead_inv = Qs::one() / lead;
        let mut out: Vec<Qs> = Vec::with_capacity(rel);
        out.push(lead_inv.clone());
        for k in 1..rel {
            let mut acc = Qs::zero();
            for j in 1..=k {
                if let Some(c) = self.coeffs.get(j) {
                    if !c.is_zero() {
                        acc = acc + c.clone() * out[k - j].clone();
                    }
                }
            }
            out.push(-(acc * lead_inv.clone()));
        }
        let val = -self.val;
        Ok(ExpJet { val, coeffs: out, prec: Some(val + rel as i64) }.normalized())
    }

    pub fn scale(&self, c: &Qs) -> Self {
        ExpJet {
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            prec: self.prec,
        }
        .normalized()
    }
}

fn q_const(c: &Q) -> Qs {
    Qs::constant(c.clone())
}

fn poly_in_p_at_exp(p: &Poly<Q>, order: usize) -> ExpJet {
    // P(e^h) = sum_j P_j e^(j h)
    let mut acc = ExpJet::constant(Qs::zero());
    for (j, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = ExpJet::exp(&Poly::constant(Q::from_integer((j as i64).into())), order);
        acc = acc.add(&e.scale(&q_const(c)));
    }
    acc
}

fn coeff_at_exp(c: &Qp, order: usize) -> Result<ExpJet> {
    let num = poly_in_p_at_exp(c.num(), order);
    if c.den().is_constant() {
        return Ok(num.scale(&q_const(&(Q::one() / c.den().coeff(0)))));
    }
    let den = poly_in_p_at_exp(c.den(), order);
    Ok(num.mul(&den.inv(order)?))
}

/// Outcome of one specialization attempt at a fixed order.
enum Attempt {
    Done(FactoredS),
    NeedMoreOrder,
}

fn attempt(z: &FactoredT, order: usize) -> Result<Attempt> {
    // numerator: sum_i c_i(e^h) e^(-i s h)
    let mut acc = ExpJet::constant(Qs::zero());
    for (i, c) in z.numerator().coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t_pow = ExpJet::exp(&Poly::linear(Q::from_integer((-(i as i64)).into()), Q::zero()), order);
        acc = acc.add(&coeff_at_exp(c, order)?.mul(&t_pow));
    }
    let mut candidates = BTreeSet::new();
    for (atom, &k) in z.atoms() {
        // 1 - p^-b t^a = 1 - exp(-(a s + b) h)
        let c = Poly::linear(Q::from_integer((-(atom.a() as i64)).into()), Q::from_integer((-(atom.b() as i64)).into()));
        let jet = ExpJet::constant(Qs::one()).add(&ExpJet::exp(&c, order).scale(&-Qs::one()));
        let inv = match jet.inv(order) {
            Ok(j) => j,
            Err(_) => return Ok(Attempt::NeedMoreOrder),
        };
        for _ in 0..k {
            acc = acc.mul(&inv);
        }
        if let Some((la, _)) = LinearAtom::normalize(atom.a() as i64, atom.b() as i64) {
            candidates.insert(la);
        }
    }
    if acc.prec().is_some_and(|p| p < 1) {
        return Ok(Attempt::NeedMoreOrder);
    }
    for e in acc.val()..0 {
        if !acc.coeff(e).unwrap().is_zero() {
            return Err(Error::NotZetaType);
        }
    }
    let c0 = acc.coeff(0).unwrap();
    Ok(Attempt::Done(FactoredS::from_ratfn(&c0, candidates.iter())?))
}

/// The `p -> 1` limit of a zeta-type function in `t = p^-s`.
pub fn specialize_p_to_1(z: &FactoredT) -> Result<FactoredS> {
    let atoms: usize = z.atoms().values().map(|&k| k as usize).sum();
    let deg = z.numerator().degree().unwrap_or(0);
    let mut order = atoms + deg + 2;
    loop {
        match attempt(z, order.min(MAX_JET_ORDER))? {
            Attempt::Done(f) => return Ok(f),
            Attempt::NeedMoreOrder if order < MAX_JET_ORDER => order *= 2,
            Attempt::NeedMoreOrder => return Err(Error::TruncationExhausted(MAX_JET_ORDER)),
        }
    }
}
