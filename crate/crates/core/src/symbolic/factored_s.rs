//! Rational functions in `s` whose denominator is kept as a product of
//! linear atoms `a*s + b`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::poly::{fmt_q, Poly, Q};
use super::ratfunc::RatFn;
use crate::error::{Error, Result};

/// `a*s + b` with `a > 0` and `gcd(a, b) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearAtom {
    a: i64,
    b: i64,
}

impl LinearAtom {
    /// Normalizes `a*s + b` and returns the atom with the scalar `c` such
    /// that `a*s + b = c * atom`. `None` when `a = 0`.
    pub fn normalize(a: i64, b: i64) -> Option<(LinearAtom, Q)> {
        if a == 0 {
            return None;
        }
        let mut g = a.gcd(&b);
        if a < 0 {
            g = -g;
        }
        Some((LinearAtom { a: a / g, b: b / g }, Q::from_integer(BigInt::from(g))))
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn poly(&self) -> Poly<Q> {
        Poly::linear(Q::from_integer(self.a.into()), Q::from_integer(self.b.into()))
    }

    /// The zero `-b/a`.
    pub fn root(&self) -> Q {
        Q::new(BigInt::from(-self.b), BigInt::from(self.a))
    }
}

impl fmt::Display for LinearAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.a == 1 { "s".to_string() } else { format!("{}*s", self.a) };
        match self.b.signum() {
            0 => write!(f, "{s}"),
            1 => write!(f, "{s} + {}", self.b),
            _ => write!(f, "{s} - {}", -self.b),
        }
    }
}

/// Fully cancelled `numerator / prod(atom^k)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactoredS {
    num: Poly<Q>,
    atoms: BTreeMap<LinearAtom, u32>,
}

impl FactoredS {
    pub fn zero() -> Self {
        FactoredS { num: Poly::zero(), atoms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly<Q>) -> Self {
        FactoredS { num, atoms: BTreeMap::new() }
    }

    /// `1 / (a*s + b)`. Fails only for the zero function `a = b = 0`.
    pub fn inv_linear(a: i64, b: i64) -> Result<Self> {
        match LinearAtom::normalize(a, b) {
            Some((atom, c)) => {
                let mut atoms = BTreeMap::new();
                atoms.insert(atom, 1);
                Ok(FactoredS { num: Poly::constant(Q::one() / c), atoms })
            }
            None if b != 0 => Ok(Self::constant(Q::new(BigInt::one(), BigInt::from(b)))),
            None => Err(Error::DivisionByZero),
        }
    }

    /// Builds from raw parts and cancels.
    pub fn from_parts(num: Poly<Q>, atoms: BTreeMap<LinearAtom, u32>) -> Self {
        let mut f = FactoredS { num, atoms };
        f.cancel();
        f
    }

    pub fn numerator(&self) -> &Poly<Q> {
        &self.num
    }

    pub fn atoms(&self) -> &BTreeMap<LinearAtom, u32> {
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

    fn denominator_poly(&self, skip: &BTreeMap<LinearAtom, u32>) -> Poly<Q> {
        let mut d = Poly::one();
        for (atom, &k) in &self.atoms {
            let have = skip.get(atom).copied().unwrap_or(0);
            for _ in have..k {
                d = &d * &atom.poly();
            }
        }
        d
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
        let common = FactoredS { num: Poly::one(), atoms: atoms.clone() };
        let lhs = &self.num * &common.denominator_poly(&self.atoms);
        let rhs = &other.num * &common.denominator_poly(&other.atoms);
        Self::from_parts(&lhs + &rhs, atoms)
    }

    pub fn neg(&self) -> Self {
        FactoredS { num: -&self.num, atoms: self.atoms.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
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

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredS { num: self.num.scale(c), atoms: self.atoms.clone() }
    }

    /// Division by a function whose numerator has degree at most one.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut inv = match other.num.degree() {
            Some(0) => Self::constant(Q::one() / other.num.coeff(0)),
            Some(1) => {
                let (a, b) = (other.num.coeff(1), other.num.coeff(0));
                // clear denominators so the atom has integer entries
                let l = a.denom().lcm(b.denom());
                let (ai, bi) = ((a * Q::from_integer(l.clone())).to_integer(), (b * Q::from_integer(l.clone())).to_integer());
                let (ai, bi): (i64, i64) = match (i64::try_from(ai), i64::try_from(bi)) {
                    (Ok(x), Ok(y)) => (x, y),
                    _ => return Err(Error::NotFactored),
                };
                Self::inv_linear(ai, bi)?.scale(&Q::from_integer(l))
            }
            _ => return Err(Error::NotFactored),
        };
        inv = inv.mul(&Self::from_poly(other.denominator_poly(&BTreeMap::new())));
        Ok(self.mul(&inv))
    }

    /// Poles `-b/a` with orders, largest pole first.
    pub fn poles(&self) -> Vec<(Q, u32)> {
        let mut v: Vec<(Q, u32)> = self.atoms.iter().map(|(a, &k)| (a.root(), k)).collect();
        v.sort_by(|x, y| y.0.cmp(&x.0));
        v
    }

    pub fn eval(&self, s: &Q) -> Option<Q> {
        let d = self.denominator_poly(&BTreeMap::new()).eval(s);
        (!d.is_zero()).then(|| self.num.eval(s) / d)
    }

    pub fn to_ratfn(&self) -> RatFn<Q> {
        RatFn::new(self.num.clone(), self.denominator_poly(&BTreeMap::new()))
    }

    /// Converts a rational function back to factored form using the
    /// candidate atoms for the denominator.
    pub fn from_ratfn<'a>(
        r: &RatFn<Q>,
        candidates: impl IntoIterator<Item = &'a LinearAtom>,
    ) -> Result<Self> {
        let mut den = r.den().clone();
        let mut atoms = BTreeMap::new();
        for atom in candidates {
            if atoms.contains_key(atom) {
                continue;
            }
            let p = atom.poly();
            let mut k = 0;
            while let Some(qt) = den.exact_div(&p) {
                den = qt;
                k += 1;
            }
            if k > 0 {
                atoms.insert(*atom, k);
            }
        }
        if !den.is_constant() {
            return Err(Error::UnknownDenominator(den.to_string_in("s")));
        }
        let c = Q::one() / den.coeff(0);
        Ok(Self::from_parts(r.num().scale(&c), atoms))
    }
}

impl fmt::Display for FactoredS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string_in("s");
        if self.atoms.is_empty() {
            return write!(f, "{num}");
        }
        let num = if self.num.term_count() > 1 { format!("({num})") } else { num };
        let den: Vec<String> = self
            .atoms
            .iter()
            .map(|(a, &k)| if k == 1 { format!("({a})") } else { format!("({a})^{k}") })
            .collect();
        if den.len() == 1 {
            write!(f, "{num} / {}", den[0])
        } else {
            write!(f, "{num} / ({})", den.join("*"))
        }
    }
}

impl Serialize for FactoredS {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// String form of a pole list, e.g. `-2/3 (1), -1 (1)`.
pub fn fmt_poles(poles: &[(Q, u32)]) -> String {
    poles
        .iter()
        .map(|(p, k)| format!("{} ({k})", fmt_q(p)))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::super::poly::{q, qf};
    use super::*;

    fn inv(a: i64, b: i64) -> FactoredS {
        FactoredS::inv_linear(a, b).unwrap()
    }

    #[test]
    fn doubling() {
        let x = inv(1, 1);
        let y = x.add(&x);
        assert_eq!(y, inv(1, 1).scale(&q(2)));
        assert_eq!(y.to_string(), "2 / (s + 1)");
    }

    #[test]
    fn rescaled_atom_product() {
        // 1/(2s+2) * 2/(s+1) = 1/(s+1)^2
        let lhs = inv(2, 2);
        let rhs = inv(1, 1).scale(&q(2));
        let prod = lhs.mul(&rhs);
        assert_eq!(prod, inv(1, 1).mul(&inv(1, 1)));
        assert_eq!(prod.poles(), vec![(q(-1), 2)]);
        assert_eq!(prod.to_string(), "1 / (s + 1)^2");
    }

    #[test]
    fn three_lines_poles() {
        // (2 - s) / ((3s+2)(s+1))
        let f = FactoredS::from_parts(
            Poly::linear(q(-1), q(2)),
            [(LinearAtom::normalize(3, 2).unwrap().0, 1), (LinearAtom::normalize(1, 1).unwrap().0, 1)]
                .into_iter()
                .collect(),
        );
        assert_eq!(f.poles(), vec![(qf(-2, 3), 1), (q(-1), 1)]);
        assert_eq!(f.to_string(), "(-s + 2) / ((s + 1)*(3*s + 2))");
        assert!(FactoredS::one().poles().is_empty());
    }

    #[test]
    fn cancellation_preserves_poles() {
        let x = inv(3, 2).mul(&inv(1, 1));
        let atom = FactoredS::from_poly(Poly::linear(q(3), q(2)));
        let y = atom.mul(&x).checked_div(&atom).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.poles(), y.poles());
    }

    #[test]
    fn zero_division_rejected() {
        assert_eq!(inv(1, 1).checked_div(&FactoredS::zero()), Err(Error::DivisionByZero));
        assert!(FactoredS::inv_linear(0, 0).is_err());
    }

    #[test]
    fn ratfn_roundtrip() {
        let f = inv(3, 2).mul(&inv(1, 1)).add(&FactoredS::one());
        let atoms: Vec<LinearAtom> = f.atoms().keys().copied().collect();
        assert_eq!(FactoredS::from_ratfn(&f.to_ratfn(), &atoms).unwrap(), f);
    }
}
