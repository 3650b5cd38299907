//! Exact large-radius series: the change of variable `phi_u`, the elementary
//! term `R`, the perturbative series `H^(0)` and the components `H^(n)`.
//!
//! Everything is a truncated series in `g_s^2` or in `z2^-1`, where
//! `z2 = 1/(3 g_s^2 u^3)`, with Laurent polynomials in `u` as coefficients.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::LrError;
use crate::exact::{binom_q, q, qi, Coeff, Laurent, PowerSeries, Q};
use crate::hae;

type LSeries = PowerSeries<Laurent<Q>>;

/// The small variable of a [`UCoeffSeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// Powers of `g_s^2`.
    Gs2,
    /// Powers of `z2^-1`.
    Z2Inv,
}

/// `exp_tag? * (log_u * log u + sum_k c_k(u) x^k)` with `x` given by the grading.
#[derive(Clone, Debug, PartialEq)]
pub struct UCoeffSeries {
    pub grading: Grading,
    pub coeffs: Vec<Laurent<Q>>,
    pub log_u: Q,
    /// `Some(n)` for an overall factor `e^(2n/u)`.
    pub exp_tag: Option<u32>,
}

impl UCoeffSeries {
    pub fn new(grading: Grading, order: usize, mut coeffs: Vec<Laurent<Q>>) -> Self {
        coeffs.resize(order + 1, Laurent::zero());
        UCoeffSeries {
            grading,
            coeffs,
            log_u: Q::zero(),
            exp_tag: None,
        }
    }

    fn from_series(grading: Grading, s: &LSeries) -> Self {
        Self::new(grading, s.order(), s.coeffs().to_vec())
    }

    fn series(&self) -> LSeries {
        PowerSeries::new(self.order(), self.coeffs.clone())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Laurent<Q> {
        self.coeffs.get(k).cloned().unwrap_or_else(Laurent::zero)
    }

    /// Lowest and highest power of `u` in the coefficient of `x^k`.
    pub fn degree_range(&self, k: usize) -> Option<(i32, i32)> {
        let c = self.coeffs.get(k)?;
        Some((c.min_degree()?, c.max_degree()?))
    }

    pub fn is_zero(&self) -> bool {
        self.log_u.is_zero() && self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &UCoeffSeries) -> Result<UCoeffSeries, LrError> {
        if self.grading != o.grading || self.exp_tag != o.exp_tag {
            return Err(LrError::Grading);
        }
        let order = self.order().min(o.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) + o.coeff(k)).collect();
        Ok(UCoeffSeries {
            log_u: &self.log_u + &o.log_u,
            ..Self::new(self.grading, order, coeffs)
        }
        .tagged(self.exp_tag))
    }

    fn tagged(mut self, tag: Option<u32>) -> Self {
        self.exp_tag = tag;
        self
    }

    /// `d/du` at fixed `g_s`; only for untagged series in `g_s^2`.
    pub fn du(&self) -> Result<UCoeffSeries, LrError> {
        if self.grading != Grading::Gs2 || self.exp_tag.is_some() {
            return Err(LrError::Grading);
        }
        let mut coeffs: Vec<Laurent<Q>> = self.coeffs.iter().map(|c| c.du()).collect();
        coeffs[0] = coeffs[0].clone() + Laurent::monomial(self.log_u.clone(), -1);
        Ok(Self::new(Grading::Gs2, self.order(), coeffs))
    }

    /// Rewrites a `z2^-1` series in `g_s^2`: `z2^-k = 3^k u^(3k) g_s^(2k)`.
    pub fn to_gs2(&self) -> UCoeffSeries {
        if self.grading == Grading::Gs2 {
            return self.clone();
        }
        let mut three = Q::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    three = &three * qi(3);
                }
                c.shift(3 * k as i32).scale(&three)
            })
            .collect();
        UCoeffSeries {
            log_u: self.log_u.clone(),
            ..Self::new(Grading::Gs2, self.order(), coeffs)
        }
        .tagged(self.exp_tag)
    }

    /// Partial sum at `x` (the grading variable) and `u`, principal `log u`.
    pub fn eval(&self, x: Complex64, u: Complex64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.coeffs {
            s += c.eval_c64(u) * p;
            p *= x;
        }
        s += crate::exact::q_to_f64(&self.log_u) * u.ln();
        if let Some(n) = self.exp_tag {
            s *= (2.0 * n as f64 / u).exp();
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "grading": self.grading,
            "order": self.order(),
            "log_u": crate::exact::ExactFmt::exact_string(&self.log_u),
            "exp_tag": self.exp_tag,
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

fn lift(s: &PowerSeries<Q>) -> LSeries {
    s.map(|c| Laurent::constant(c.clone()))
}

fn check_order(n: usize) -> Result<(), LrError> {
    if n == 0 {
        return Err(LrError::Domain(
            "truncation order must be at least 1".into(),
        ));
    }
    Ok(())
}

/// `phi_u(z2) = sum_(n>=1) binom(3/2, n) (-2/(3u))^n z2^-(n-1)`, so that
/// `z2 + phi_u(z2) = z2 (1 - 2/(3u z2))^(3/2)`.
pub fn gen_phi_u(n: usize) -> Result<UCoeffSeries, LrError> {
    check_order(n)?;
    let coeffs = (0..=n)
        .map(|j| {
            let k = j as u32 + 1;
            let c = binom_q(&q(3, 2), k) * num_traits::pow(q(-2, 3), k as usize);
            Laurent::monomial(c, -(k as i32))
        })
        .collect();
    Ok(UCoeffSeries::new(Grading::Z2Inv, n, coeffs))
}

/// `R = (1/4) log(u^2/(1 - 2t)) + ((1 - 2t)^(3/2) - 1)/(3 g_s^2 u^3)` with
/// `t = g_s^2 u^2`, expanded in `g_s^2` term by term.
pub fn gen_r(n: usize) -> UCoeffSeries {
    let mut coeffs = vec![Laurent::monomial(qi(-1), -1)];
    let mut two = Q::one();
    for g in 1..=n {
        two = &two * qi(2);
        let from_log = &two / qi(4 * g as i64);
        let from_root = binom_q(&q(3, 2), g as u32 + 1) * num_traits::pow(qi(-2), g + 1) / qi(3);
        coeffs.push(
            Laurent::monomial(from_log, 2 * g as i32)
                + Laurent::monomial(from_root, 2 * g as i32 - 1),
        );
    }
    UCoeffSeries {
        log_u: q(1, 2),
        ..UCoeffSeries::new(Grading::Gs2, n, coeffs)
    }
}

/// `R` in the `z2` grading: `(1/2) log u + phi_u - (1/4) log(1 - 2/(3u) z2^-1)`.
fn r_tilde(n: usize) -> Result<UCoeffSeries, LrError> {
    let phi = gen_phi_u(n)?.series();
    let w = PowerSeries::monomial(1, Laurent::monomial(q(-2, 3), -1), n);
    let log = LSeries::one(n).add(&w).log()?;
    let s = phi.sub(&log.scale(&q(1, 4)));
    Ok(UCoeffSeries {
        log_u: q(1, 2),
        ..UCoeffSeries::from_series(Grading::Z2Inv, &s)
    })
}

/// `kappa_l = (2l-1)! / (2^(l-1) (l-1)!^2)`, the coefficients of
/// `lambda_s^2 = sum kappa_l u^(2l+1) g_s^(2l)`.
pub fn lambda_sq_coeffs(n: usize) -> Vec<Q> {
    let mut fact = vec![Q::one()];
    for k in 1..2 * n + 1 {
        let next = &fact[k - 1] * qi(k as i64);
        fact.push(next);
    }
    (1..=n)
        .map(|l| &fact[2 * l - 1] / (num_traits::pow(qi(2), l - 1) * &fact[l - 1] * &fact[l - 1]))
        .collect()
}

fn lambda_sq(n: usize) -> LSeries {
    let mut c = vec![Laurent::zero()];
    for (i, k) in lambda_sq_coeffs(n).into_iter().enumerate() {
        c.push(Laurent::monomial(k, 2 * i as i32 + 3));
    }
    PowerSeries::new(n, c)
}

fn mismatch(what: &str, a: &UCoeffSeries, b: &UCoeffSeries) -> LrError {
    let k = (0..=a.order().min(b.order())).find(|&k| a.coeff(k) != b.coeff(k));
    LrError::RouteMismatch(match k {
        Some(k) => format!("{what}: coefficient {k} differs"),
        None => format!("{what}: log u terms differ"),
    })
}

/// `R + F^s(lambda_s)` with `F^s = sum_l a_(l+1) lambda^(2l)`.
fn h0_by_substitution(n: usize) -> Result<UCoeffSeries, LrError> {
    let (_, _, fe) = hae::gen_g_f(n)?;
    let a = fe.free_energy.unwrap_or_default();
    let lam = lambda_sq(n);
    let mut pow = LSeries::one(n);
    let mut s = LSeries::zero(n);
    for al in a.iter().take(n) {
        pow = pow.mul(&lam);
        s = s.add(&pow.scale(al));
    }
    UCoeffSeries::from_series(Grading::Gs2, &s).add(&gen_r(n))
}

/// `g(z2 + phi_u(z2)) + R` in `z2`, rewritten in `g_s^2`.
fn h0_by_composition(n: usize) -> Result<UCoeffSeries, LrError> {
    let (g, _, _) = hae::gen_g_f(n)?;
    let phi = gen_phi_u(n)?.series();
    let composed = lift(&g.series).compose_shift(&phi);
    let s = UCoeffSeries::from_series(Grading::Z2Inv, &composed).add(&r_tilde(n)?)?;
    Ok(s.to_gs2())
}

/// `H^(0)` to order `g_s^(2n)`, built along both routes which must agree.
pub fn gen_h0(n: usize) -> Result<UCoeffSeries, LrError> {
    check_order(n)?;
    let a = h0_by_substitution(n)?;
    let b = h0_by_composition(n)?;
    if a != b {
        return Err(mismatch("H0", &a, &b));
    }
    Ok(a)
}

/// Left side minus right side of
/// `H' - (3/2) g_s^2 u^3 (H' + (u/3) H'' + (u/3) H'^2) = 1/(2u) + 1/u^2`.
pub fn u_equation_residual(h: &UCoeffSeries) -> Result<UCoeffSeries, LrError> {
    let d1 = h.du()?;
    let d2 = d1.du()?.series();
    let d1 = d1.series();
    let u3 = Laurent::monomial(q(1, 3), 1);
    let inner = d1.add(&d2.add(&d1.mul(&d1)).scale_by(&u3));
    let lhs = d1.sub(&inner.shift_down(1).scale_by(&Laurent::monomial(q(3, 2), 3)));
    let rhs = Laurent::monomial(q(1, 2), -1) + Laurent::monomial(qi(1), -2);
    let r = lhs.sub(&PowerSeries::constant(rhs, h.order()));
    Ok(UCoeffSeries::from_series(Grading::Gs2, &r))
}

/// `c_-(t)` and `c_+(t)` from `phi^2 = g_s^2 u^3 (1 + t c_+(t))` and
/// `1/(3 phi^2) - 1/(3 g_s^2 u^3) = -1/u + g_s^2 u c_-(t)`.
pub fn c_minus_plus(n: usize) -> Result<(PowerSeries<Q>, PowerSeries<Q>), LrError> {
    let m = n + 2;
    let one_plus = PowerSeries::new(m, lambda_sq_coeffs(m + 1));
    let c_plus = shift_up(&one_plus.sub(&PowerSeries::one(m)));
    // (1/(1 + t c_+) - 1)/(3t) = -1 + t c_-
    let d = shift_up(&one_plus.inv()?.sub(&PowerSeries::one(m))).scale(&q(1, 3));
    let c_minus = shift_up(&d.add(&PowerSeries::one(m)));
    Ok((c_minus.truncate(n), c_plus.truncate(n)))
}

/// Division by the variable of a series with zero constant term.
fn shift_up(s: &PowerSeries<Q>) -> PowerSeries<Q> {
    PowerSeries::new(s.order(), s.coeffs()[1..].to_vec())
}

/// `H^(n)` split as `e^(2n/u) * series` together with `Pol_n(u, 2g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HnSeries {
    pub n: u32,
    /// Coefficients of `g_s^(2g)` in `e^(-2n/u) H^(n)`; tagged `e^(2n/u)`.
    pub series: UCoeffSeries,
    /// `Pol_n(u, 2g)` for `g = 1..=gmax`.
    pub pols: Vec<Laurent<Q>>,
}

impl HnSeries {
    /// Every `Pol_n(u, 2g)` is a polynomial of degree exactly `2g`.
    pub fn degrees_ok(&self) -> bool {
        self.pols
            .iter()
            .enumerate()
            .all(|(i, p)| p.is_polynomial() && p.max_degree() == Some(2 * (i as i32 + 1)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pols: Vec<_> = self
            .pols
            .iter()
            .enumerate()
            .map(|(i, p)| serde_json::json!({ "g": i + 1, "pol": p.to_json() }))
            .collect();
        serde_json::json!({
            "n": self.n,
            "prefactor": format!("exp({}/u)", 2 * self.n),
            "constant": crate::exact::ExactFmt::exact_string(&q(-1, self.n as i64)),
            "pols": pols,
        })
    }
}

fn gauss_free_components(order: usize, n: u32) -> Result<PowerSeries<Q>, LrError> {
    let gn = hae::gen_gn(order, n)?;
    Ok(gn[n as usize].series.clone())
}

fn sign_pow(n: u32) -> Q {
    if n.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `(-1)^n exp(-2n g_s^2 u c_-) sum_k 3^k G_(n,k) (g_s^2 u^3)^k (1 + t c_+)^k`.
fn hn_by_c_pm(n: u32, gmax: usize) -> Result<UCoeffSeries, LrError> {
    let (c_minus, c_plus) = c_minus_plus(gmax)?;
    // t/u c_-(t) and 1 + t c_+(t) with t = u^2 x
    let mut a = vec![Laurent::zero()];
    let mut b = vec![Laurent::one()];
    for r in 0..gmax {
        a.push(Laurent::monomial(c_minus.coeff(r), 2 * r as i32 + 1));
        b.push(Laurent::monomial(c_plus.coeff(r), 2 * r as i32 + 2));
    }
    let a = PowerSeries::new(gmax, a);
    let b = PowerSeries::new(gmax, b);
    let expo = a.scale(&qi(-2 * n as i64)).exp()?;
    let gn = gauss_free_components(gmax, n)?;
    let x_u3b = b.shift_down(1).scale_by(&Laurent::u_pow(3));
    let mut pow = LSeries::one(gmax);
    let mut three = Q::one();
    let mut sum = LSeries::zero(gmax);
    for k in 0..=gmax {
        if k > 0 {
            pow = pow.mul(&x_u3b);
            three = &three * qi(3);
        }
        sum = sum.add(&pow.scale(&(&three * gn.coeff(k))));
    }
    let s = expo.mul(&sum).scale(&sign_pow(n));
    Ok(UCoeffSeries::from_series(Grading::Gs2, &s).tagged(Some(n)))
}

/// `(-1)^n e^(-2n (phi_u + 1/u)) G_n(z2 + phi_u)` in `z2`, rewritten in `g_s^2`.
fn hn_by_composition(n: u32, gmax: usize) -> Result<UCoeffSeries, LrError> {
    let phi = gen_phi_u(gmax)?.series();
    let hat = phi.add(&PowerSeries::constant(Laurent::u_pow(-1), gmax));
    let expo = hat.scale(&qi(-2 * n as i64)).exp()?;
    let gn = lift(&gauss_free_components(gmax, n)?).compose_shift(&phi);
    let s = expo.mul(&gn).scale(&sign_pow(n));
    Ok(UCoeffSeries::from_series(Grading::Z2Inv, &s)
        .tagged(Some(n))
        .to_gs2())
}

/// `H^(n)` and its polynomials, built along both routes which must agree.
pub fn gen_hn(n: u32, gmax: usize) -> Result<HnSeries, LrError> {
    if n == 0 {
        return Err(LrError::Domain(
            "transseries index must be at least 1".into(),
        ));
    }
    check_order(gmax)?;
    let a = hn_by_c_pm(n, gmax)?;
    let b = hn_by_composition(n, gmax)?;
    if a != b {
        return Err(mismatch(&format!("H{n}"), &a, &b));
    }
    let pols = (1..=gmax).map(|g| a.coeff(g).shift(-(g as i32))).collect();
    Ok(HnSeries { n, series: a, pols })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(terms: &[(i32, Q)]) -> Laurent<Q> {
        terms.iter().fold(Laurent::zero(), |acc, (k, c)| {
            acc + Laurent::monomial(c.clone(), *k)
        })
    }

    #[test]
    fn phi_u_leading_terms() {
        let p = gen_phi_u(4).unwrap();
        assert_eq!(p.coeff(0), lq(&[(-1, qi(-1))]));
        assert_eq!(p.coeff(1), lq(&[(-2, q(1, 6))]));
        assert!(p
            .coeffs
            .iter()
            .all(|c| c.max_degree().is_some_and(|d| d < 0)));
    }

    #[test]
    fn r_matches_bivariate_expansion() {
        // -log(1-2t)/4 and ((1-2t)^(3/2) - 1)/(3t) from exp/log in t
        let n = 8;
        let two_t = PowerSeries::new(n + 1, vec![Q::one(), qi(-2)]);
        let log = two_t.log().unwrap();
        let root = log.scale(&q(3, 2)).exp().unwrap();
        let r = gen_r(n);
        assert_eq!(r.coeff(0), lq(&[(-1, qi(-1))]));
        assert_eq!(r.log_u, q(1, 2));
        for g in 1..=n {
            let want = lq(&[
                (2 * g as i32, -log.coeff(g) / qi(4)),
                (2 * g as i32 - 1, root.coeff(g + 1) / qi(3)),
            ]);
            assert_eq!(r.coeff(g), want, "g = {g}");
        }
        assert_eq!(r.coeff(1), lq(&[(2, q(1, 2)), (1, q(1, 2))]));
    }

    #[test]
    fn lambda_sq_matches_binomial() {
        // t (1-2t)^(-3/2) expanded by the binomial series
        let k = lambda_sq_coeffs(10);
        assert_eq!(&k[..2], &[qi(1), qi(3)]);
        for (j, kj) in k.iter().enumerate() {
            let b = binom_q(&q(-3, 2), j as u32) * num_traits::pow(qi(-2), j);
            assert_eq!(*kj, b);
        }
    }

    #[test]
    fn h0_first_coefficients() {
        let h = gen_h0(6).unwrap();
        assert_eq!(h.coeff(1), lq(&[(3, q(5, 24)), (2, q(1, 2)), (1, q(1, 2))]));
        for g in 2..=6 {
            let (lo, _) = h.degree_range(g).unwrap();
            assert!(lo >= 1, "g = {g}");
        }
    }

    #[test]
    fn u_equation_holds() {
        let h = gen_h0(10).unwrap();
        assert!(u_equation_residual(&h).unwrap().is_zero());
        let c = UCoeffSeries::new(
            Grading::Gs2,
            10,
            (0..=10)
                .map(|k| Laurent::constant(q(k as i64 + 2, 7)))
                .collect(),
        );
        assert!(u_equation_residual(&h.add(&c).unwrap()).unwrap().is_zero());
        let bump = UCoeffSeries::new(Grading::Gs2, 10, vec![Laurent::zero(), Laurent::u_pow(1)]);
        assert!(!u_equation_residual(&h.add(&bump).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn c_pm_constants() {
        let (cm, cp) = c_minus_plus(4).unwrap();
        assert_eq!(cm.coeff(0), q(1, 2));
        assert_eq!(cp.coeff(0), qi(3));
    }

    #[test]
    fn first_polynomials() {
        let h = gen_hn(1, 2).unwrap();
        assert_eq!(h.series.coeff(0), Laurent::constant(qi(-1)));
        assert_eq!(h.pols[0], lq(&[(2, q(5, 12)), (0, qi(1))]));
        assert_eq!(
            h.pols[1],
            lq(&[
                (4, q(-25, 288)),
                (3, q(5, 4)),
                (2, q(-5, 12)),
                (1, q(1, 3)),
                (0, q(-1, 2))
            ])
        );
        assert!(h.degrees_ok());
    }

    #[test]
    fn polynomial_degrees() {
        for n in 1..=3 {
            let h = gen_hn(n, 4).unwrap();
            assert_eq!(h.series.coeff(0), Laurent::constant(q(-1, n as i64)));
            assert!(h.degrees_ok(), "n = {n}");
        }
    }
}
