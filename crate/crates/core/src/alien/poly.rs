//! Polynomials over Gaussian rationals in the parameters `s1, s2` and two
//! auxiliary symbols `tau, rho` used for symbolic flow times.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{qi, Coeff, Gauss, Q};

pub const NVARS: usize = 4;

/// Indices of the polynomial variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    S1 = 0,
    S2 = 1,
    Tau = 2,
    Rho = 3,
}

const NAMES: [&str; NVARS] = ["s1", "s2", "tau", "rho"];

pub type Exps = [u16; NVARS];

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, Gauss>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Gauss::one())
    }

    pub fn constant(c: Gauss) -> Self {
        Self::monomial([0; NVARS], c)
    }

    pub fn rational(c: Q) -> Self {
        Self::constant(Gauss::real(c))
    }

    pub fn monomial(e: Exps, c: Gauss) -> Self {
        let mut p = Self::zero();
        p.push(e, c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = 1;
        Self::monomial(e, Gauss::one())
    }

    /// `c * v^k`.
    pub fn var_pow(v: Var, k: u16, c: Gauss) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = k;
        Self::monomial(e, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Gauss)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> Gauss {
        self.terms.get(e).cloned().unwrap_or_else(Gauss::zero)
    }

    pub fn push(&mut self, e: Exps, c: Gauss) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.remove(&e).unwrap_or_else(Gauss::zero) + c;
        if !entry.is_zero() {
            self.terms.insert(e, entry);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.push(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Gauss) -> Poly {
        let mut r = Poly::zero();
        for (e, x) in &self.terms {
            r.push(*e, x.clone() * c.clone());
        }
        r
    }

    pub fn scale_q(&self, c: &Q) -> Poly {
        self.scale(&Gauss::real(c.clone()))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for k in 0..NVARS {
                    e[k] += eb[k];
                }
                r.push(e, ca.clone() * cb.clone());
            }
        }
        r
    }

    /// Product truncated to `deg_v <= cap`.
    pub fn mul_capped(&self, o: &Poly, v: Var, cap: Option<u32>) -> Poly {
        let mut r = self.mul(o);
        if let Some(c) = cap {
            r.truncate(v, c);
        }
        r
    }

    pub fn truncate(&mut self, v: Var, cap: u32) {
        self.terms.retain(|e, _| e[v as usize] as u32 <= cap);
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v as usize] as u32).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v as usize] as u32).min()
    }

    /// Partial derivative.
    pub fn diff(&self, v: Var) -> Poly {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            let k = e[v as usize];
            if k > 0 {
                let mut e2 = *e;
                e2[v as usize] -= 1;
                r.push(e2, c.scale(&qi(k as i64)));
            }
        }
        r
    }

    /// Replaces `v` by `value`, truncating `deg_{s2} <= cap` along the way.
    pub fn substitute(&self, v: Var, value: &Poly, cap: Option<u32>) -> Poly {
        let max = self.degree(v).unwrap_or(0);
        let mut powers = vec![Poly::one()];
        for k in 1..=max as usize {
            let next = powers[k - 1].mul_capped(value, Var::S2, cap);
            powers.push(next);
        }
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            let k = e[v as usize] as usize;
            let mut rest = *e;
            rest[v as usize] = 0;
            let part = Poly::monomial(rest, c.clone()).mul_capped(&powers[k], Var::S2, cap);
            r = r.add(&part);
        }
        r
    }

    /// Sets `v = 0`.
    pub fn at_zero(&self, v: Var) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[v as usize] == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u16) -> Poly {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            if e[v as usize] == k {
                let mut e2 = *e;
                e2[v as usize] = 0;
                r.push(e2, c.clone());
            }
        }
        r
    }

    pub fn as_constant(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some(Gauss::zero()),
            1 => self.terms.get(&[0; NVARS]).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = if c.is_real() {
                crate::exact::scalar::fmt_q(&c.re)
            } else {
                format!("({c})")
            };
            f.write_str(&cs)?;
            for (k, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => write!(f, "*{}", NAMES[k])?,
                    _ => write!(f, "*{}^{}", NAMES[k], d)?,
                }
            }
        }
        Ok(())
    }
}

/// Truncated series in `s2`: `log(1 + c s2) = sum (-1)^(k-1) c^k s2^k / k`.
pub fn log_one_plus(c: &Gauss, cap: u32) -> Poly {
    let mut r = Poly::zero();
    let mut ck = Gauss::one();
    for k in 1..=cap {
        ck = ck * c.clone();
        let sign = if k % 2 == 1 { 1 } else { -1 };
        r = r.add(&Poly::var_pow(
            Var::S2,
            k as u16,
            ck.scale(&crate::exact::q(sign, k as i64)),
        ));
    }
    r
}

/// Truncated `s2 / (1 + c s2) = sum (-c)^k s2^(k+1)`.
pub fn s2_over_one_plus(c: &Gauss, cap: u32) -> Poly {
    let mut r = Poly::zero();
    let mut ck = Gauss::one();
    for k in 0..cap {
        r = r.add(&Poly::var_pow(Var::S2, k as u16 + 1, ck.clone()));
        ck = ck * -c.clone();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn display_is_stable() {
        let p = Poly::var(Var::S1).add(&Poly::var_pow(Var::S2, 2, Gauss::new(q(1, 2), qi(-1))));
        assert_eq!(p.to_string(), "(1/2-1*i)*s2^2 + 1*s1");
    }

    #[test]
    fn substitution_truncates() {
        let p = Poly::var_pow(Var::S2, 2, Gauss::one());
        let v = s2_over_one_plus(&Gauss::i(), 4);
        let r = p.substitute(Var::S2, &v, Some(4));
        // (s2 - i s2^2 - s2^3 ...)^2 = s2^2 - 2i s2^3 - 3 s2^4 + ...
        assert_eq!(r.coeff_of(Var::S2, 2).as_constant(), Some(Gauss::one()));
        assert_eq!(
            r.coeff_of(Var::S2, 3).as_constant(),
            Some(Gauss::new(qi(0), qi(-2)))
        );
        assert_eq!(
            r.coeff_of(Var::S2, 4).as_constant(),
            Some(Gauss::real(qi(-3)))
        );
        assert_eq!(r.degree(Var::S2), Some(4));
    }

    #[test]
    fn log_series() {
        let l = log_one_plus(&Gauss::real(qi(1)), 3);
        assert_eq!(
            l.coeff_of(Var::S2, 3).as_constant(),
            Some(Gauss::real(q(1, 3)))
        );
    }
}
