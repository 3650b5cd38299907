//! Truncated power series `c_0 + c_1 z^-1 + ... + c_N z^-N`.
//!
//! The same type doubles as a series in any small parameter (`g_s^2` in the
//! large-radius module); only [`PowerSeries::diff_z`] and
//! [`PowerSeries::compose_shift`] assume the variable is `z^-1`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::scalar::{qi, Coeff, ExactFmt, Q};
use super::ExactError;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Clone, PartialEq, Debug)]
pub struct PowerSeries<T> {
    order: usize,
    coeffs: Vec<T>,
}

/// Which binary or unary ring operation to run through [`ps_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Mul,
    InvOfUnit,
}

impl<T: Coeff> PowerSeries<T> {
    /// Builds a series of the given order; missing coefficients are zero and
    /// surplus ones are dropped.
    pub fn new(order: usize, mut coeffs: Vec<T>) -> Self {
        coeffs.resize(order + 1, T::zero());
        PowerSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::new(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// `c * z^-k`.
    pub fn monomial(k: usize, c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::new(order, self.coeffs[..=order].to_vec())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> PowerSeries<U> {
        PowerSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        let c = (0..=n)
            .map(|k| self.coeffs[k].clone() + o.coeffs[k].clone())
            .collect();
        Self::new(n, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        let c = (0..=n)
            .map(|k| self.coeffs[k].clone() - o.coeffs[k].clone())
            .collect();
        Self::new(n, c)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, q: &Q) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn scale_by(&self, a: &T) -> Self {
        self.map(|c| c.clone() * a.clone())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        let mut c = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self::new(n, c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.order);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Reciprocal of a series whose constant term is a unit.
    pub fn inv(&self) -> Result<Self, ExactError> {
        let a0inv = self.coeffs[0].try_inv().ok_or(ExactError::NotAUnit)?;
        let n = self.order;
        let mut r: Vec<T> = Vec::with_capacity(n + 1);
        r.push(a0inv.clone());
        for k in 1..=n {
            let mut s = T::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s = s + self.coeffs[j].clone() * r[k - j].clone();
                }
            }
            r.push(-(s * a0inv.clone()));
        }
        Ok(Self::new(n, r))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Formal logarithm; needs constant term 1.
    pub fn log(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_one_like() {
            return Err(ExactError::WrongConstantTerm);
        }
        // k l_k = k a_k - sum_{j<k} j l_j a_{k-j}
        let n = self.order;
        let mut l = vec![T::zero(); n + 1];
        for k in 1..=n {
            let mut s = self.coeffs[k].scale(&qi(k as i64));
            for (j, lj) in l.iter().enumerate().take(k).skip(1) {
                if !lj.is_zero() && !self.coeffs[k - j].is_zero() {
                    s = s - lj.scale(&qi(j as i64)) * self.coeffs[k - j].clone();
                }
            }
            l[k] = s.scale(&Q::new(1.into(), (k as i64).into()));
        }
        Ok(Self::new(n, l))
    }

    /// Formal exponential; needs constant term 0.
    pub fn exp(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_zero() {
            return Err(ExactError::WrongConstantTerm);
        }
        // k e_k = sum_{j=1..k} j a_j e_{k-j}
        let n = self.order;
        let mut e = vec![T::zero(); n + 1];
        e[0] = T::one();
        for k in 1..=n {
            let mut s = T::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s = s + self.coeffs[j].scale(&qi(j as i64)) * e[k - j].clone();
                }
            }
            e[k] = s.scale(&Q::new(1.into(), (k as i64).into()));
        }
        Ok(Self::new(n, e))
    }

    /// `d/dz`: the coefficient of `z^-(k+1)` becomes `-k c_k`. The result
    /// carries order `N-1`.
    pub fn diff_z(&self) -> Self {
        let n = self.order.saturating_sub(1);
        self.diff_keep().truncate(n)
    }

    /// `d/dz` keeping order `N`; exact since `d/dz O(z^-N-1) = O(z^-N-2)`.
    fn diff_keep(&self) -> Self {
        let n = self.order;
        let mut c = vec![T::zero()];
        c.extend(
            self.coeffs[..n]
                .iter()
                .enumerate()
                .map(|(j, a)| a.scale(&qi(-(j as i64)))),
        );
        Self::new(n, c)
    }

    /// `self(z + phi(z))` via the Taylor sum `sum_n phi^n d^n(self)/n!`.
    ///
    /// `phi` may carry a constant term. The `n`-th Taylor term starts at
    /// `z^-(n+1)`, so summing `n <= N` fixes every retained coefficient and
    /// the discarded tail only touches orders above `N`.
    pub fn compose_shift(&self, phi: &Self) -> Self {
        let n = self.order.min(phi.order);
        let psi = self.truncate(n);
        let phi = phi.truncate(n);
        let mut out = psi.clone();
        let mut deriv = psi;
        let mut phi_pow = Self::one(n);
        let mut fact = Q::one();
        for j in 1..=n {
            deriv = deriv.diff_keep();
            if deriv.is_zero() {
                break;
            }
            phi_pow = phi_pow.mul(&phi);
            fact /= qi(j as i64);
            out = out.add(&phi_pow.mul(&deriv).scale(&fact));
        }
        out
    }

    /// `self(-z)`: flips the sign of odd coefficients.
    pub fn reflect(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        Self::new(self.order, c)
    }

    /// Multiplication by `z^-k` (shift of indices).
    pub fn shift_down(&self, k: usize) -> Self {
        let mut c = vec![T::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(self.order, c)
    }
}

trait OneLike {
    fn is_one_like(&self) -> bool;
}

impl<T: Coeff> OneLike for T {
    fn is_one_like(&self) -> bool {
        *self == T::one()
    }
}

/// Dispatcher over the three basic ring operations.
pub fn ps_arith<T: Coeff>(
    a: &PowerSeries<T>,
    b: &PowerSeries<T>,
    kind: ArithKind,
) -> Result<PowerSeries<T>, ExactError> {
    match kind {
        ArithKind::Add => Ok(a.add(b)),
        ArithKind::Mul => Ok(a.mul(b)),
        ArithKind::InvOfUnit => a.inv(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogExp {
    Log,
    Exp,
}

pub fn ps_log_exp<T: Coeff>(
    a: &PowerSeries<T>,
    kind: LogExp,
) -> Result<PowerSeries<T>, ExactError> {
    match kind {
        LogExp::Log => a.log(),
        LogExp::Exp => a.exp(),
    }
}

pub fn ps_diff<T: Coeff>(a: &PowerSeries<T>) -> PowerSeries<T> {
    a.diff_z()
}

pub fn ps_compose<T: Coeff>(psi: &PowerSeries<T>, phi: &PowerSeries<T>) -> PowerSeries<T> {
    psi.compose_shift(phi)
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl<T: Coeff + ExactFmt> PowerSeries<T> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeriesJson {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.exact_string()).collect(),
        })
        .expect("series serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ExactError> {
        let s: SeriesJson =
            serde_json::from_value(v.clone()).map_err(|e| ExactError::Parse(e.to_string()))?;
        if s.coeffs.len() != s.order + 1 {
            return Err(ExactError::Parse(format!(
                "expected {} coefficients, found {}",
                s.order + 1,
                s.coeffs.len()
            )));
        }
        let c = s
            .coeffs
            .iter()
            .map(|x| T::parse_exact(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(s.order, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::q;

    fn s(c: &[(i64, i64)], n: usize) -> PowerSeries<Q> {
        PowerSeries::new(n, c.iter().map(|&(a, b)| q(a, b)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = s(&[(1, 1), (1, 1)], 6);
        let b = s(&[(1, 1), (-1, 1)], 6);
        assert_eq!(
            ps_arith(&a, &b, ArithKind::Mul).unwrap(),
            s(&[(1, 1), (0, 1), (-1, 1)], 6)
        );
    }

    #[test]
    fn geometric_inverse() {
        let a = s(&[(1, 1), (1, 1)], 5);
        let inv = ps_arith(&a, &a, ArithKind::InvOfUnit).unwrap();
        let expect: Vec<_> = (0..=5)
            .map(|k| qi(if k % 2 == 0 { 1 } else { -1 }))
            .collect();
        assert_eq!(inv.coeffs(), &expect[..]);
        let z = s(&[(0, 1), (1, 1)], 5);
        assert_eq!(z.inv(), Err(ExactError::NotAUnit));
    }

    #[test]
    fn log_exp_preconditions() {
        let a = s(&[(2, 1), (1, 1)], 4);
        assert_eq!(a.log(), Err(ExactError::WrongConstantTerm));
        assert_eq!(a.exp(), Err(ExactError::WrongConstantTerm));
        let b = s(&[(1, 1), (1, 1)], 8);
        assert_eq!(
            ps_log_exp(&ps_log_exp(&b, LogExp::Log).unwrap(), LogExp::Exp).unwrap(),
            b
        );
    }

    #[test]
    fn log_of_one_plus_x() {
        let b = s(&[(1, 1), (1, 1)], 5);
        let expect = s(&[(0, 1), (1, 1), (-1, 2), (1, 3), (-1, 4), (1, 5)], 5);
        assert_eq!(b.log().unwrap(), expect);
    }

    #[test]
    fn derivative_rules() {
        assert!(ps_diff(&PowerSeries::<Q>::one(5)).is_zero());
        let zinv = PowerSeries::monomial(1, qi(1), 5);
        let d = ps_diff(&zinv);
        assert_eq!(d.order(), 4);
        assert_eq!(d, PowerSeries::monomial(2, qi(-1), 4));
    }

    #[test]
    fn compose_with_constant_shift() {
        // 1/(z+c) = z^-1 - c z^-2 + c^2 z^-3 - ...
        let c = q(3, 7);
        let zinv = PowerSeries::monomial(1, qi(1), 8);
        let shift = PowerSeries::constant(c.clone(), 8);
        let out = ps_compose(&zinv, &shift);
        for k in 1..=8usize {
            let mut expect = qi(1);
            for _ in 1..k {
                expect *= -c.clone();
            }
            assert_eq!(out.coeff(k), expect, "k = {k}");
        }
        assert_eq!(out.coeff(0), qi(0));
    }

    #[test]
    fn compose_with_zero_is_identity() {
        let a = s(&[(1, 1), (2, 3), (-5, 7), (1, 9)], 6);
        assert_eq!(ps_compose(&a, &PowerSeries::zero(6)), a);
    }

    #[test]
    fn json_round_trip() {
        let a = s(&[(1, 1), (5, 72), (-385, 10368)], 3);
        let v = a.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"coeffs":["1","5/72","-385/10368","0"],"order":3}"#
        );
        assert_eq!(PowerSeries::<Q>::from_json(&v).unwrap(), a);
    }

    #[test]
    fn results_carry_minimum_order() {
        let a = s(&[(1, 1)], 3);
        let b = s(&[(1, 1)], 7);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(a.mul(&b).order(), 3);
    }
}
