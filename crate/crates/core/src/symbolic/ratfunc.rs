//! Univariate rational functions in lowest terms with a monic denominator.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Coeff, Poly, Q};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Coeff> RatFn<F> {
    /// Panics when `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = den.lead();
        if !lead.is_one() {
            let inv = F::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFn { num, den }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Returns `None` when the denominator vanishes at `x`.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| Self::new(self.den.clone(), self.num.clone()))
    }
}

impl<F: Coeff> Zero for RatFn<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Coeff> One for RatFn<F> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<F: Coeff> Add for RatFn<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den);
        }
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<F: Coeff> Sub for RatFn<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Coeff> Mul for RatFn<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<F: Coeff> Div for RatFn<F> {
    type Output = Self;
    /// Panics on division by the zero function.
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inv().expect("division by the zero rational function");
        self * inv
    }
}

impl<F: Coeff> Neg for RatFn<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFn { num: -self.num, den: self.den }
    }
}

impl RatFn<Q> {
    pub fn to_string_in(&self, var: &str) -> String {
        let n = self.num.to_string_in(var);
        if self.den.is_constant() {
            return n;
        }
        let wrap = |p: &Poly<Q>, s: String| {
            if p.term_count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(&self.num, n),
            wrap(&self.den, self.den.to_string_in(var))
        )
    }

    /// The rational number this function equals, if it is constant.
    pub fn as_constant(&self) -> Option<Q> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }
}
