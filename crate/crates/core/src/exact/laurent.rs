//! Laurent polynomials in one variable `u`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::scalar::{q_to_f64, qi, Coeff, ExactFmt, Gauss, Q};

/// `sum_k c_k u^k` over a finite set of integer exponents.
#[derive(Clone, PartialEq, Debug)]
pub struct Laurent<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Coeff> Laurent<T> {
    pub fn monomial(c: T, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    /// `u^k`.
    pub fn u_pow(k: i32) -> Self {
        Self::monomial(T::one(), k)
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn coeff(&self, k: i32) -> T {
        self.terms.get(&k).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &T)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_degree().is_none_or(|d| d >= 0)
    }

    /// `d/du`.
    pub fn du(&self) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            if k != 0 {
                out.push(k - 1, c.scale(&qi(k as i64)));
            }
        }
        out
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Laurent<U> {
        let mut out = Laurent::zero();
        for (&k, c) in &self.terms {
            out.push(k, f(c));
        }
        out
    }

    fn push(&mut self, k: i32, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.remove(&k).unwrap_or_else(T::zero) + c;
        if !entry.is_zero() {
            self.terms.insert(k, entry);
        }
    }
}

impl Laurent<Q> {
    pub fn eval_c64(&self, u: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&k, c)| q_to_f64(c) * u.powi(k))
            .sum()
    }
}

impl Laurent<Gauss> {
    pub fn eval_c64(&self, u: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&k, c)| c.to_c64() * u.powi(k))
            .sum()
    }
}

impl<T: Coeff + ExactFmt> Laurent<T> {
    /// JSON coefficient map `{degree: "p/q"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (k, c) in &self.terms {
            m.insert(k.to_string(), serde_json::Value::String(c.exact_string()));
        }
        serde_json::Value::Object(m)
    }
}

impl<T: Coeff> Zero for Laurent<T> {
    fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Coeff> One for Laurent<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Coeff> Add for Laurent<T> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (k, c) in o.terms {
            self.push(k, c);
        }
        self
    }
}

impl<T: Coeff> Sub for Laurent<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Coeff> Neg for Laurent<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<T: Coeff> Mul for Laurent<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &o.terms {
                out.push(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Coeff> Coeff for Laurent<T> {
    fn from_rational(q: &Q) -> Self {
        Self::constant(T::from_rational(q))
    }

    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&k, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.try_inv()?, -k))
    }

    fn scale(&self, q: &Q) -> Self {
        self.map(|c| c.scale(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::q;

    #[test]
    fn product_and_derivative() {
        let a = Laurent::monomial(qi(1), -1) + Laurent::constant(q(1, 2));
        let b = Laurent::monomial(qi(2), 1);
        assert_eq!(
            a.clone() * b,
            Laurent::constant(qi(2)) + Laurent::monomial(qi(1), 1)
        );
        assert_eq!(a.du(), Laurent::monomial(qi(-1), -2));
        assert!(!a.is_polynomial());
    }

    #[test]
    fn monomial_units() {
        let a = Laurent::monomial(q(3, 5), 4);
        assert_eq!(a.clone() * a.try_inv().unwrap(), Laurent::one());
        let b = a.clone() + Laurent::one();
        assert!(b.try_inv().is_none());
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = Laurent::monomial(qi(1), 3);
        assert!((a.clone() - a).is_zero());
    }
}
