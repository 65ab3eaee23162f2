//! Rational functions in `t = p^-s` with coefficients in `Q(p)` and a
//! denominator kept as a product of geometric atoms `1 - p^-b t^a`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::poly::{fmt_q, Poly, Q};
use super::ratfunc::RatFn;

/// Field of rational functions in the symbol `p`.
pub type Qp = RatFn<Q>;

/// `p^k` for any integer `k`.
pub fn p_pow(k: i64) -> Qp {
    let mono = Poly::monomial(Q::one(), k.unsigned_abs() as usize);
    if k >= 0 {
        Qp::from_poly(mono)
    } else {
        Qp::new(Poly::one(), mono)
    }
}

/// `1 - p^-b t^a` with `a, b >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeometricAtom {
    a: u32,
    b: u32,
}

impl GeometricAtom {
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a >= 1 && b >= 1, "geometric atom needs a, b >= 1");
        GeometricAtom { a, b }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn poly(&self) -> Poly<Qp> {
        Poly::new(
            (0..=self.a as usize)
                .map(|i| match i {
                    0 => Qp::one(),
                    i if i == self.a as usize => -p_pow(-(self.b as i64)),
                    _ => Qp::zero(),
                })
                .collect(),
        )
    }

    /// Real part `-b/a` of the poles this atom contributes in `s`.
    pub fn real_part(&self) -> Q {
        Q::new(BigInt::from(-(self.b as i64)), BigInt::from(self.a))
    }

    pub fn eval(&self, p: &Q, t: &Q) -> Q {
        Q::one() - pow_q(t, self.a as i64) / pow_q(p, self.b as i64)
    }
}

impl fmt::Display for GeometricAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 1 {
            write!(f, "1 - p^-{} t", self.b)
        } else {
            write!(f, "1 - p^-{} t^{}", self.b, self.a)
        }
    }
}

pub(crate) fn pow_q(x: &Q, k: i64) -> Q {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        Q::one() / num_traits::pow(x.clone(), k.unsigned_abs() as usize)
    }
}

#[derive(Clone, Debug)]
pub struct FactoredT {
    num: Poly<Qp>,
    atoms: BTreeMap<GeometricAtom, u32>,
}

impl FactoredT {
    pub fn zero() -> Self {
        FactoredT { num: Poly::zero(), atoms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Qp::one())
    }

    pub fn constant(c: Qp) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^k`
    pub fn monomial(c: Qp, k: usize) -> Self {
        FactoredT { num: Poly::monomial(c, k), atoms: BTreeMap::new() }
    }

    pub fn inv_atom(atom: GeometricAtom) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(atom, 1);
        FactoredT { num: Poly::one(), atoms }
    }

    pub fn from_parts(num: Poly<Qp>, atoms: BTreeMap<GeometricAtom, u32>) -> Self {
        let mut f = FactoredT { num, atoms };
        f.cancel();
        f
    }

    pub fn numerator(&self) -> &Poly<Qp> {
        &self.num
    }

    pub fn atoms(&self) -> &BTreeMap<GeometricAtom, u32> {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.atoms.clear();
            return;
        }
        for (atom, k) in self.atoms.iter_mut() {
            let p = atom.poly();
            while *k > 0 {
                match self.num.exact_div(&p) {
                    Some(qt) => {
                        self.num = qt;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        self.atoms.retain(|_, k| *k > 0);
    }

    fn missing_factors(&self, target: &BTreeMap<GeometricAtom, u32>) -> Poly<Qp> {
        let mut d = Poly::one();
        for (atom, &k) in target {
            let have = self.atoms.get(atom).copied().unwrap_or(0);
            for _ in have..k {
                d = &d * &atom.poly();
            }
        }
        d
    }

    pub fn denominator_poly(&self) -> Poly<Qp> {
        FactoredT::one().missing_factors(&self.atoms)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut atoms = self.atoms.clone();
        for (a, &k) in &other.atoms {
            let e = atoms.entry(*a).or_insert(0);
            *e = (*e).max(k);
        }
        let lhs = &self.num * &self.missing_factors(&atoms);
        let rhs = &other.num * &other.missing_factors(&atoms);
        Self::from_parts(&lhs + &rhs, atoms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut atoms = self.atoms.clone();
        for (a, &k) in &other.atoms {
            *atoms.entry(*a).or_insert(0) += k;
        }
        Self::from_parts(&self.num * &other.num, atoms)
    }

    pub fn scale(&self, c: &Qp) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredT { num: self.num.scale(c), atoms: self.atoms.clone() }
    }

    /// Same function, possibly with different (non-irreducible) atoms.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.denominator_poly() == &other.num * &self.denominator_poly()
    }

    /// `{-b/a}` over the surviving atoms, sorted descending.
    pub fn pole_real_parts(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.atoms.keys().map(|a| a.real_part()).collect();
        v.sort_by(|x, y| y.cmp(x));
        v.dedup();
        v
    }

    /// Exact value at concrete `p` and `t`; `None` on a vanishing denominator.
    pub fn eval(&self, p: &Q, t: &Q) -> Option<Q> {
        let mut den = Q::one();
        for (atom, &k) in &self.atoms {
            den *= pow_q(&atom.eval(p, t), k as i64);
        }
        if den.is_zero() {
            return None;
        }
        let mut num = Q::zero();
        for c in self.num.coeffs().iter().rev() {
            num = num * t.clone() + c.eval(p)?;
        }
        Some(num / den)
    }

    /// The function at a concrete prime as a rational function of `t`.
    pub fn at_prime(&self, p: u64) -> PrimeSpecialized {
        let pq = Q::from_integer(BigInt::from(p));
        let num = Poly::new(
            self.num
                .coeffs()
                .iter()
                .map(|c| c.eval(&pq).expect("coefficient pole at a prime"))
                .collect(),
        );
        PrimeSpecialized { p, num, atoms: self.atoms.clone() }
    }
}

impl PartialEq for FactoredT {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

fn fmt_qp(c: &Qp) -> String {
    let s = c.to_string_in("p");
    if c.num().term_count() > 1 || !c.is_polynomial() {
        format!("({s})")
    } else {
        s
    }
}

fn fmt_t_power(i: usize) -> String {
    match i {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{i}"),
    }
}

fn fmt_terms<C>(coeffs: &[C], is_zero: impl Fn(&C) -> bool, show: impl Fn(&C, usize) -> String) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !is_zero(c))
        .map(|(i, c)| show(c, i))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn fmt_denominator<A: fmt::Display>(atoms: &BTreeMap<GeometricAtom, u32>, show: impl Fn(&GeometricAtom) -> A) -> String {
    let parts: Vec<String> = atoms
        .iter()
        .map(|(a, &k)| if k == 1 { format!("({})", show(a)) } else { format!("({})^{k}", show(a)) })
        .collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join("*"))
    }
}

impl fmt::Display for FactoredT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_terms(self.num.coeffs(), |c| c.is_zero(), |c, i| {
            let t = fmt_t_power(i);
            match (t.is_empty(), c.is_one()) {
                (true, _) => fmt_qp(c),
                (false, true) => t,
                (false, false) => format!("{}*{t}", fmt_qp(c)),
            }
        });
        if self.atoms.is_empty() {
            return write!(f, "{num}");
        }
        let num = if self.num.term_count() > 1 { format!("({num})") } else { num };
        write!(f, "{num} / {}", fmt_denominator(&self.atoms, |a| a.to_string()))
    }
}

impl Serialize for FactoredT {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A [`FactoredT`] with `p` replaced by a prime.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeSpecialized {
    pub p: u64,
    pub num: Poly<Q>,
    pub atoms: BTreeMap<GeometricAtom, u32>,
}

impl PrimeSpecialized {
    pub fn eval(&self, t: &Q) -> Option<Q> {
        let pq = Q::from_integer(BigInt::from(self.p));
        let mut den = Q::one();
        for (atom, &k) in &self.atoms {
            den *= pow_q(&atom.eval(&pq, t), k as i64);
        }
        (!den.is_zero()).then(|| self.num.eval(t) / den)
    }
}

impl fmt::Display for PrimeSpecialized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string_in("t");
        if self.atoms.is_empty() {
            return write!(f, "{num}");
        }
        let num = if self.num.term_count() > 1 { format!("({num})") } else { num };
        let pq = Q::from_integer(BigInt::from(self.p));
        let den = fmt_denominator(&self.atoms, |a| {
            let c = fmt_q(&pow_q(&pq, -(a.b() as i64)));
            format!("1 - {c}*{}", fmt_t_power(a.a() as usize))
        });
        write!(f, "{num} / {den}")
    }
}

impl Serialize for PrimeSpecialized {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::{q, qf};
    use super::*;

    fn one_minus_p_inv() -> Qp {
        Qp::one() - p_pow(-1)
    }

    fn line() -> FactoredT {
        FactoredT::inv_atom(GeometricAtom::new(1, 1)).scale(&one_minus_p_inv())
    }

    #[test]
    fn atom_cancels_against_numerator() {
        let atom = GeometricAtom::new(1, 1);
        let f = FactoredT::from_parts(atom.poly(), [(atom, 1)].into_iter().collect());
        assert!(f.atoms().is_empty());
        assert_eq!(f, FactoredT::one());
    }

    #[test]
    fn evaluation_at_prime() {
        // (1 - 1/3) / (1 - t/3) at t = 1/3 is 3/4
        assert_eq!(line().eval(&q(3), &qf(1, 3)), Some(qf(3, 4)));
        assert_eq!(line().at_prime(3).eval(&qf(1, 3)), Some(qf(3, 4)));
        assert_eq!(line().eval(&q(7), &q(1)), Some(q(1)));
    }

    #[test]
    fn semantic_equality_across_atom_choices() {
        // (1 + p^-1 t) / (1 - p^-2 t^2) = 1 / (1 - p^-1 t)
        let lhs = FactoredT::from_parts(
            Poly::new(vec![Qp::one(), p_pow(-1)]),
            [(GeometricAtom::new(2, 2), 1)].into_iter().collect(),
        );
        let rhs = FactoredT::inv_atom(GeometricAtom::new(1, 1));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.pole_real_parts(), vec![q(-1)]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(line().to_string(), "((p - 1)/p) / (1 - p^-1 t)");
        assert_eq!(line().at_prime(3).to_string(), "2/3 / (1 - 1/3*t)");
    }
}
