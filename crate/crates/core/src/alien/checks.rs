//! The formal integral, its companion and the identities they satisfy.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::element::{Caps, Frame, Lin, Mono, TransElement};
use super::ops::{derive, exp_flow, te_apply, AlienOp, Der};
use super::poly::{log_one_plus, Exps, Poly, Var};
use super::AlienError;
use crate::exact::{binom, q, qi, Coeff, Gauss, PowerSeries, Q};
use crate::hae;

fn sign(n: u32) -> i64 {
    if n % 2 == 1 {
        1
    } else {
        -1
    }
}

fn check_caps(k_sigma: u32, k_e: u32) -> Result<(), AlienError> {
    if k_sigma == 0 || k_e == 0 {
        return Err(AlienError::MissingCap("caps must be at least 1".into()));
    }
    Ok(())
}

/// `s1 + g + sum_n ((-1)^(n-1)/n) s2^n e^(-2nz) E^n` by direct summation.
pub fn formal_integral_direct(k_sigma: u32, k_e: u32) -> TransElement {
    let caps = Caps::right(k_sigma, k_e);
    let mut terms = vec![
        (Mono::ONE, Poly::var(Var::S1)),
        (Mono::lin(Lin::G), Poly::one()),
    ];
    for n in 1..=k_sigma.min(k_e) {
        let c = Gauss::real(q(sign(n), n as i64));
        terms.push((
            Mono::e(n as i32, n as i32),
            Poly::var_pow(Var::S2, n as u16, c),
        ));
    }
    TransElement::from_terms(terms, caps, Frame::Direct)
}

/// `exp(i s2 e^(-2z) Delta_2)(s1 + g)`.
pub fn formal_integral_flow(k_sigma: u32, k_e: u32) -> Result<TransElement, AlienError> {
    let seed = TransElement::from_terms(
        [
            (Mono::ONE, Poly::var(Var::S1)),
            (Mono::lin(Lin::G), Poly::one()),
        ],
        Caps::right(k_sigma, k_e),
        Frame::Direct,
    );
    let t = Poly::var_pow(Var::S2, 1, Gauss::i());
    exp_flow(false, &t, &seed)
}

/// The formal integral, built along both routes which must agree.
pub fn formal_integral(k_sigma: u32, k_e: u32) -> Result<TransElement, AlienError> {
    check_caps(k_sigma, k_e)?;
    let a = formal_integral_direct(k_sigma, k_e);
    let b = formal_integral_flow(k_sigma, k_e)?;
    if a != b {
        return Err(AlienError::RouteMismatch(format!(
            "formal integral: direct sum and flow differ by {}",
            a.sub(&b)?
        )));
    }
    Ok(a)
}

/// `-2z + d1 + f + sum_n ((-1)^(n-1)/n) d2^n e^(2nz) E^-n`, with `d1, d2` in
/// the `s1, s2` slots.
pub fn companion_f(k_sigma: u32, k_e: u32) -> Result<TransElement, AlienError> {
    check_caps(k_sigma, k_e)?;
    let caps = Caps {
        sigma: Some(k_sigma),
        e_hi: None,
        e_lo: Some(-(k_e as i32)),
    };
    let mut terms = vec![
        (Mono::lin(Lin::Z), Poly::rational(qi(-2))),
        (Mono::ONE, Poly::var(Var::S1)),
        (Mono::lin(Lin::F), Poly::one()),
    ];
    for n in 1..=k_sigma.min(k_e) {
        let c = Gauss::real(q(sign(n), n as i64));
        terms.push((
            Mono::e(-(n as i32), -(n as i32)),
            Poly::var_pow(Var::S2, n as u16, c),
        ));
    }
    Ok(TransElement::from_terms(terms, caps, Frame::Direct))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BridgeResiduals {
    pub right: TransElement,
    pub left: TransElement,
}

impl BridgeResiduals {
    pub fn vanish(&self) -> bool {
        self.right.is_zero() && self.left.is_zero()
    }
}

/// `Delta_2 x + i e^(2z) d_s2 x` and
/// `Delta_-2 x + i e^(-2z) (s2 d_s1 - s2^2 d_s2) x`.
pub fn bridge_residuals(x: &TransElement) -> Result<BridgeResiduals, AlienError> {
    let i = Gauss::i();
    let right = derive(Der::Right, x).add(&x.d_param(Var::S2).shift_e(-1).scale(&i))?;
    let s2 = Poly::var(Var::S2);
    let inner = x
        .d_param(Var::S1)
        .scale_poly(&s2)
        .sub(&x.d_param(Var::S2).scale_poly(&s2.mul(&s2)))?;
    let left = derive(Der::Left, x).add(&inner.shift_e(1).scale(&i))?;
    Ok(BridgeResiduals { right, left })
}

pub fn bridge_check(k_sigma: u32, k_e: u32) -> Result<BridgeResiduals, AlienError> {
    bridge_residuals(&formal_integral(k_sigma, k_e)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

/// Right: `exp(D_{>=0}) G - G(s1, s2 - i)`.
/// Left: `exp(D_{<=0}) G - G(s1 + log(1 - i s2), s2 / (1 - i s2))`.
pub fn stokes_action_check(
    dir: Direction,
    k_sigma: u32,
    k_e: u32,
) -> Result<TransElement, AlienError> {
    let g = formal_integral(k_sigma, k_e)?;
    match dir {
        Direction::Right => {
            if k_sigma < k_e {
                return Err(AlienError::CapInconsistency(
                    "the right action needs K_sigma >= K_e".into(),
                ));
            }
            let g = {
                let caps = g.caps();
                g.with_caps(Caps {
                    sigma: None,
                    ..caps
                })
            };
            let lhs = te_apply(AlienOp::StokesRight, &g)?;
            let shift = Poly::var(Var::S2).sub(&Poly::constant(Gauss::i()));
            lhs.sub(&g.substitute(Var::S2, &shift)?)
        }
        Direction::Left => {
            if k_e < k_sigma {
                return Err(AlienError::CapInconsistency(
                    "the left action needs K_e >= K_sigma".into(),
                ));
            }
            let g = {
                let caps = g.caps();
                g.with_caps(Caps {
                    e_hi: None,
                    e_lo: None,
                    ..caps
                })
            };
            let lhs = te_apply(AlienOp::StokesLeft, &g)?;
            lhs.sub(&left_substitution(&g, &Poly::one(), k_sigma)?)
        }
    }
}

/// `x(s1 + log(1 - i t s2), s2 / (1 - i t s2))`, truncated at `s2`-degree `k`.
pub(crate) fn left_substitution(
    x: &TransElement,
    t: &Poly,
    k: u32,
) -> Result<TransElement, AlienError> {
    let (x1, x2) = left_flow(t, k);
    x.substitute(Var::S2, &x2)?.substitute(Var::S1, &x1)
}

/// Closed-form left flow at time `t`: `(s1 + log(1 - i t s2), s2/(1 - i t s2))`.
pub fn left_flow(t: &Poly, k: u32) -> (Poly, Poly) {
    let mi = -Gauss::i();
    let w = Poly::var(Var::S2).mul(t);
    let sub = |p: &Poly| -> Poly {
        // p is a series in s2; replace s2^j by (s2 t)^j.
        let mut r = Poly::zero();
        for (e, c) in p.terms() {
            let j = e[Var::S2 as usize];
            let mut wj = Poly::one();
            for _ in 0..j {
                wj = wj.mul(&w);
            }
            r = r.add(&wj.scale(c));
        }
        r
    };
    let x1 = Poly::var(Var::S1).add(&sub(&log_one_plus(&mi, k)));
    // s2 / (1 - i t s2) = s2 * sum (i t s2)^j
    let mut x2 = Poly::zero();
    let mut wj = Poly::var(Var::S2);
    for _ in 0..k {
        x2 = x2.add(&wj);
        wj = wj.mul(&w).scale(&Gauss::i());
    }
    (x1, x2)
}

/// Residuals of `x1' = -i x2`, `x2' = i x2^2` in the flow time, to `s2`-degree `k`.
pub fn left_flow_ode_residual(k: u32) -> (Poly, Poly) {
    let (x1, x2) = left_flow(&Poly::var(Var::Tau), k);
    let i = Poly::constant(Gauss::i());
    let mut r1 = x1.diff(Var::Tau).add(&x2.mul(&i));
    let mut r2 = x2.diff(Var::Tau).sub(&x2.mul(&x2).mul(&i));
    r1.truncate(Var::S2, k);
    r2.truncate(Var::S2, k);
    (r1, r2)
}

/// `exp(tau D_{<=0}) G` against the substituted closed-form flow.
pub fn left_flow_action_residual(k: u32) -> Result<TransElement, AlienError> {
    let g = formal_integral(k, k)?;
    let g = {
        let caps = g.caps();
        g.with_caps(Caps {
            e_hi: None,
            e_lo: None,
            ..caps
        })
    };
    let tau = Poly::var(Var::Tau);
    let lhs = exp_flow(true, &tau, &g)?;
    lhs.sub(&left_substitution(&g, &tau, k)?)
}

/// `exp(rho D) exp(tau D) G - exp((rho + tau) D) G` for the right or left flow.
pub fn flow_group_residual(
    dir: Direction,
    k_sigma: u32,
    k_e: u32,
) -> Result<TransElement, AlienError> {
    let g = formal_integral(k_sigma, k_e)?;
    let left = dir == Direction::Left;
    let g = if left {
        {
            let caps = g.caps();
            g.with_caps(Caps {
                e_hi: None,
                e_lo: None,
                ..caps
            })
        }
    } else {
        {
            let caps = g.caps();
            g.with_caps(Caps {
                sigma: None,
                ..caps
            })
        }
    };
    let tau = Poly::var(Var::Tau);
    let rho = Poly::var(Var::Rho);
    let two = exp_flow(left, &rho, &exp_flow(left, &tau, &g)?)?;
    let one = exp_flow(left, &rho.add(&tau), &g)?;
    two.sub(&one)
}

/// `G_0 = g`, `G_k = ((-1)^(k-1)/k) E^k`.
pub fn g_component(k: u32) -> TransElement {
    let (mo, c) = if k == 0 {
        (Mono::lin(Lin::G), Gauss::one())
    } else {
        (Mono::e(k as i32, 0), Gauss::real(q(sign(k), k as i64)))
    };
    TransElement::mono(mo, Poly::constant(c), Caps::EXACT, Frame::Direct)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaPlusEntry {
    pub omega: i32,
    pub k: u32,
    pub formula: TransElement,
    pub engine: TransElement,
}

impl DeltaPlusEntry {
    pub fn agrees(&self) -> bool {
        self.formula == self.engine
    }
}

/// Closed form of `Delta^+_w G_k` for `w = 2n` or `w = -2n`, `n >= 1`.
pub fn deltaplus_formula(omega: i32, k: u32) -> TransElement {
    let n = (omega.unsigned_abs() / 2) as u64;
    let k64 = k as u64;
    let scaled = |idx: u32, c: Gauss| g_component(idx).scale(&c);
    if omega > 0 {
        let c = Gauss::i_pow(-(n as i64)).scale(&binom(k64 + n, n));
        scaled(k + n as u32, c)
    } else if n > k64 {
        TransElement::zero(Caps::EXACT, Frame::Direct)
    } else if n == k64 {
        let c = -Gauss::i_pow(k as i64).scale(&q(1, k as i64));
        TransElement::constant(Poly::constant(c), Frame::Direct)
    } else {
        let c = Gauss::i_pow(n as i64).scale(&binom(k64 - 1, n));
        scaled(k - n as u32, c)
    }
}

/// Formula against engine for `1 <= n <= nmax`, `0 <= k <= kmax`, both signs.
pub fn deltaplus_table(nmax: u32, kmax: u32) -> Result<Vec<DeltaPlusEntry>, AlienError> {
    let mut out = Vec::new();
    for k in 0..=kmax {
        let gk = g_component(k);
        for n in 1..=nmax as i32 {
            for omega in [2 * n, -2 * n] {
                let engine = te_apply(AlienOp::DeltaPlus(omega), &gk)?;
                out.push(DeltaPlusEntry {
                    omega,
                    k,
                    formula: deltaplus_formula(omega, k),
                    engine,
                });
            }
        }
    }
    Ok(out)
}

/// Key of an expanded coefficient: parameter exponents and `e^(-2z)` grading.
pub type SeriesKey = (Exps, i32);

/// Replaces `E`, `g`, `f`, `u`, `v`, `z^-k` by their truncated series.
pub fn expand_to_series(
    x: &TransElement,
    order: usize,
) -> Result<BTreeMap<SeriesKey, PowerSeries<Gauss>>, AlienError> {
    if x.frame() != Frame::Direct {
        return Err(AlienError::NotExpandable("composed-frame element".into()));
    }
    let lift = |s: &PowerSeries<Q>| s.map(|c| Gauss::real(c.clone()));
    let (psi, phi) = hae::gen_psi_phi(order + 1)?;
    let (g, f, _) = hae::gen_g_f(order + 1)?;
    let u = lift(&g.series.diff_z());
    let v = lift(&f.series.diff_z());
    let psi = lift(&psi.series.truncate(order));
    let phi = lift(&phi.series.truncate(order));
    let e = phi.div(&psi).map_err(hae::HaeError::from)?;
    let e_inv = psi.div(&phi).map_err(hae::HaeError::from)?;
    let g = lift(&g.series.truncate(order));
    let f = lift(&f.series.truncate(order));
    let mut out: BTreeMap<SeriesKey, PowerSeries<Gauss>> = BTreeMap::new();
    for (mo, c) in x.terms() {
        if mo.p != 0 {
            return Err(AlienError::NotExpandable(
                "P outside the composed frame".into(),
            ));
        }
        let mut s = match mo.lin {
            Lin::One => PowerSeries::one(order),
            Lin::G => g.clone(),
            Lin::F => f.clone(),
            Lin::Z => return Err(AlienError::NotExpandable("z is not a series in 1/z".into())),
            Lin::R => return Err(AlienError::NotExpandable("R has no 1/z expansion".into())),
        };
        let base = if mo.m >= 0 { &e } else { &e_inv };
        s = s.mul(&base.pow(mo.m.unsigned_abs()));
        s = s
            .mul(&u.pow(mo.u as u32))
            .mul(&v.pow(mo.v as u32))
            .shift_down(mo.k as usize);
        for (exps, a) in c.terms() {
            let key = (*exps, mo.n);
            let add = s.scale_by(a);
            let slot = out.remove(&key).unwrap_or_else(|| PowerSeries::zero(order));
            let sum = slot.add(&add);
            if !sum.is_zero() {
                out.insert(key, sum);
            }
        }
    }
    Ok(out)
}

/// `x'' + (x')^2 + 2x' + (5/36) z^-2`, the nonlinear equation solved by the
/// formal integral and by its companion.
pub fn nonlinear_residual(x: &TransElement) -> Result<TransElement, AlienError> {
    let d1 = derive(Der::Dz, x);
    let d2 = derive(Der::Dz, &d1);
    let pot = TransElement::mono(
        Mono { k: 2, ..Mono::ONE },
        Poly::rational(q(5, 36)),
        x.caps(),
        x.frame(),
    );
    d2.add(&d1.mul(&d1)?)?.add(&d1.scale_q(&qi(2)))?.add(&pot)
}

/// The component of `x` on `s2^j e^(-2nz)` with no other parameters.
pub fn slice(x: &TransElement, j: u16, n: i32) -> TransElement {
    let s = x.sigma2_slice(j).filter(|m| m.n == n);
    let terms = s
        .terms()
        .map(|(m, p)| (*m, p.at_zero(Var::S1)))
        .collect::<Vec<_>>();
    TransElement::from_terms(terms, s.caps(), s.frame())
}

pub fn is_unit_poly(p: &Poly) -> bool {
    p.as_constant().is_some_and(|c| c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formal_integral_coefficients() {
        let g = formal_integral(4, 4).unwrap();
        let one = slice(&g, 1, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one.coeff(&Mono::e(1, 1)), Poly::one());
        let two = slice(&g, 2, 2);
        assert_eq!(two.coeff(&Mono::e(2, 2)), Poly::rational(q(-1, 2)));
        assert_eq!(g.sigma2_slice(0).coeff(&Mono::ONE), Poly::var(Var::S1));
        assert_eq!(g.sigma2_slice(0).coeff(&Mono::lin(Lin::G)), Poly::one());
    }

    #[test]
    fn bridge_vanishes() {
        assert!(bridge_check(4, 4).unwrap().vanish());
        let seed = TransElement::from_terms(
            [
                (Mono::ONE, Poly::var(Var::S1)),
                (Mono::lin(Lin::G), Poly::one()),
            ],
            Caps::right(0, 4),
            Frame::Direct,
        );
        // only the s2^0 slice is meaningful for the seed alone
        assert!(bridge_residuals(&seed).unwrap().left.is_zero());
    }

    #[test]
    fn stokes_actions() {
        assert!(stokes_action_check(Direction::Right, 5, 5)
            .unwrap()
            .is_zero());
        assert!(stokes_action_check(Direction::Left, 5, 5)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn companion_terms() {
        let f = companion_f(3, 3).unwrap();
        assert_eq!(f.coeff(&Mono::e(-1, -1)), Poly::var(Var::S2));
        assert_eq!(
            f.coeff(&Mono::e(-2, -2)),
            Poly::var_pow(Var::S2, 2, Gauss::real(q(-1, 2)))
        );
        assert_eq!(f.coeff(&Mono::lin(Lin::Z)), Poly::rational(qi(-2)));
    }

    #[test]
    fn both_transseries_solve_the_equation() {
        assert!(nonlinear_residual(&formal_integral(4, 4).unwrap())
            .unwrap()
            .is_zero());
        assert!(nonlinear_residual(&companion_f(4, 4).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn deltaplus_examples() {
        let t = deltaplus_table(3, 3).unwrap();
        assert!(t.iter().all(|e| e.agrees()));
        let find = |w: i32, k: u32| {
            t.iter()
                .find(|e| e.omega == w && e.k == k)
                .unwrap()
                .engine
                .clone()
        };
        assert!(find(-4, 1).is_zero());
        assert_eq!(find(-2, 2), g_component(1).scale(&Gauss::i()));
        assert_eq!(
            find(-2, 1),
            TransElement::constant(Poly::constant(-Gauss::i()), Frame::Direct)
        );
    }

    #[test]
    fn flows() {
        assert!(flow_group_residual(Direction::Right, 4, 4)
            .unwrap()
            .is_zero());
        assert!(flow_group_residual(Direction::Left, 4, 4)
            .unwrap()
            .is_zero());
        let (a, b) = left_flow_ode_residual(6);
        assert!(a.is_zero() && b.is_zero());
        assert!(left_flow_action_residual(4).unwrap().is_zero());
    }

    #[test]
    fn expansion_examples() {
        let e = TransElement::mono(Mono::e(1, 0), Poly::one(), Caps::EXACT, Frame::Direct);
        let s = expand_to_series(&e, 4).unwrap();
        let se = &s[&([0; 4], 0)];
        assert_eq!(se.coeff(0), Gauss::one());
        assert_eq!(se.coeff(1), Gauss::real(q(-5, 36)));
    }
}
