//! The large-radius transseries in the composed frame, where `g`, `E` stand
//! for `g o (id + phi_u)`, `E o (id + phi_u)` and `P = e^(-2 phi_u)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::series::gen_phi_u;
use super::LrError;
use crate::alien::checks::{left_substitution, BridgeResiduals, Direction};
use crate::alien::ops::{derive, exp_flow, te_apply, AlienOp, Der};
use crate::alien::poly::Exps;
use crate::alien::{AlienError, Caps, Frame, Lin, Mono, Poly, TransElement, Var};
use crate::exact::{q, Gauss, Laurent, PowerSeries, Q};
use crate::hae;

fn check_caps(k_sigma: u32, k_e: u32) -> Result<(), LrError> {
    if k_sigma == 0 || k_e == 0 {
        return Err(AlienError::MissingCap("caps must be at least 1".into()).into());
    }
    Ok(())
}

fn seed(caps: Caps) -> TransElement {
    TransElement::from_terms(
        [
            (Mono::ONE, Poly::var(Var::S1)),
            (Mono::lin(Lin::G), Poly::one()),
            (Mono::lin(Lin::R), Poly::one()),
        ],
        caps,
        Frame::Composed,
    )
}

/// `s1 + g + R - sum_n (1/n) s2^n e^(-2n z2) P^n E^n`, summed directly.
pub fn lr_transseries_direct(k_sigma: u32, k_e: u32) -> TransElement {
    let caps = Caps::right(k_sigma, k_e);
    let mut x = seed(caps);
    for n in 1..=k_sigma.min(k_e) as i32 {
        let c = Gauss::real(q(-1, n as i64));
        x.push(Mono::e(n, n).with_p(n), Poly::var_pow(Var::S2, n as u16, c));
    }
    x.truncate();
    x
}

/// `exp(-i s2 e^(-2 z2) Delta_2)(s1 + g + R)`.
pub fn lr_transseries_flow(k_sigma: u32, k_e: u32) -> Result<TransElement, LrError> {
    let t = Poly::var_pow(Var::S2, 1, -Gauss::i());
    Ok(exp_flow(false, &t, &seed(Caps::right(k_sigma, k_e)))?)
}

/// The large-radius transseries, built along both routes which must agree.
pub fn lr_transseries(k_sigma: u32, k_e: u32) -> Result<TransElement, LrError> {
    check_caps(k_sigma, k_e)?;
    let a = lr_transseries_direct(k_sigma, k_e);
    let b = lr_transseries_flow(k_sigma, k_e)?;
    if a != b {
        return Err(LrError::RouteMismatch(format!(
            "transseries: direct sum and flow differ by {}",
            a.sub(&b)?
        )));
    }
    Ok(a)
}

/// `Delta_2 x - i e^(2 z2) d_s2 x` and
/// `Delta_-2 x - i e^(-2 z2) (s2 d_s1 - s2^2 d_s2) x`.
pub fn lr_bridge_residuals(x: &TransElement) -> Result<BridgeResiduals, LrError> {
    let i = Gauss::i();
    let right = derive(Der::Right, x).sub(&x.d_param(Var::S2).shift_e(-1).scale(&i))?;
    let s2 = Poly::var(Var::S2);
    let inner = x
        .d_param(Var::S1)
        .scale_poly(&s2)
        .sub(&x.d_param(Var::S2).scale_poly(&s2.mul(&s2)))?;
    let left = derive(Der::Left, x).sub(&inner.shift_e(1).scale(&i))?;
    Ok(BridgeResiduals { right, left })
}

/// Bridge residuals together with the number of nonzero coefficients left
/// after expanding them to `z2`-order `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct LrBridge {
    pub residuals: BridgeResiduals,
    pub expanded_nonzero: usize,
}

impl LrBridge {
    pub fn vanish(&self) -> bool {
        self.residuals.vanish() && self.expanded_nonzero == 0
    }
}

pub fn lr_bridge_check(k_sigma: u32, k_e: u32, order: usize) -> Result<LrBridge, LrError> {
    let h = lr_transseries(k_sigma, k_e)?;
    let residuals = lr_bridge_residuals(&h)?;
    let mut expanded_nonzero = 0;
    for r in [&residuals.right, &residuals.left] {
        expanded_nonzero += expand_composed(r, order)?
            .values()
            .map(|s| s.coeffs().iter().filter(|c| !c.is_zero()).count())
            .sum::<usize>();
    }
    Ok(LrBridge {
        residuals,
        expanded_nonzero,
    })
}

/// Right: `exp(D_{>=0}) H - H(s1, s2 + i)`.
/// Left: `exp(D_{<=0}) H - H(s1 + log(1 + i s2), s2 / (1 + i s2))`.
pub fn lr_stokes_check(dir: Direction, k_sigma: u32, k_e: u32) -> Result<TransElement, LrError> {
    let h = lr_transseries(k_sigma, k_e)?;
    let caps = h.caps();
    match dir {
        Direction::Right => {
            if k_sigma < k_e {
                return Err(AlienError::CapInconsistency(
                    "the right action needs K_sigma >= K_e".into(),
                )
                .into());
            }
            let h = h.with_caps(Caps {
                sigma: None,
                ..caps
            });
            let lhs = te_apply(AlienOp::StokesRight, &h)?;
            let shift = Poly::var(Var::S2).add(&Poly::constant(Gauss::i()));
            Ok(lhs.sub(&h.substitute(Var::S2, &shift)?)?)
        }
        Direction::Left => {
            if k_e < k_sigma {
                return Err(AlienError::CapInconsistency(
                    "the left action needs K_e >= K_sigma".into(),
                )
                .into());
            }
            let h = h.with_caps(Caps {
                e_hi: None,
                e_lo: None,
                ..caps
            });
            let lhs = te_apply(AlienOp::StokesLeft, &h)?;
            let back = Poly::constant(-Gauss::one());
            Ok(lhs.sub(&left_substitution(&h, &back, k_sigma)?)?)
        }
    }
}

/// Key of an expanded composed-frame coefficient: parameter exponents,
/// `e^(-2 z2)` grading, the power `p` of the prefactor `e^(2p/u)` left over
/// from `P^p`, and whether the entry multiplies `log u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LrKey {
    pub exps: Exps,
    pub n: i32,
    pub p: i32,
    pub log_u: bool,
}

type GSeries = PowerSeries<Laurent<Gauss>>;

fn to_gauss(s: &PowerSeries<Laurent<Q>>) -> GSeries {
    s.map(|l| l.map(|c| Gauss::real(c.clone())))
}

/// Replaces `g`, `f`, `E`, `R` and `P` by their series in `z2^-1`, with
/// `P^p = e^(2p/u) exp(-2p (phi_u + 1/u))`.
pub fn expand_composed(
    x: &TransElement,
    order: usize,
) -> Result<BTreeMap<LrKey, GSeries>, LrError> {
    if x.frame() != Frame::Composed {
        return Err(AlienError::NotExpandable("direct-frame element".into()).into());
    }
    let lift = |s: &PowerSeries<Q>| s.map(|c| Laurent::constant(c.clone()));
    let phi_q = PowerSeries::new(order, gen_phi_u(order.max(1))?.coeffs[..=order].to_vec());
    let compose = |s: &PowerSeries<Q>| to_gauss(&lift(s).compose_shift(&phi_q));
    let (psi, phi) = hae::gen_psi_phi(order)?;
    let (g, f, _) = hae::gen_g_f(order)?;
    let e = compose(&phi.series.div(&psi.series)?);
    let e_inv = compose(&psi.series.div(&phi.series)?);
    let g = compose(&g.series);
    let f = compose(&f.series);
    let hat = to_gauss(&phi_q.add(&PowerSeries::constant(Laurent::u_pow(-1), order)));
    let w = PowerSeries::monomial(1, Laurent::monomial(Gauss::real(q(-2, 3)), -1), order);
    let r_hat = to_gauss(&phi_q).sub(&GSeries::one(order).add(&w).log()?.scale(&q(1, 4)));
    let mut out: BTreeMap<LrKey, GSeries> = BTreeMap::new();
    for (mo, c) in x.terms() {
        if mo.u != 0 || mo.v != 0 || mo.k != 0 {
            return Err(AlienError::NotExpandable(
                "derivative generators in the composed frame".into(),
            )
            .into());
        }
        let mut parts: Vec<(bool, GSeries)> = match mo.lin {
            Lin::One => vec![(false, GSeries::one(order))],
            Lin::G => vec![(false, g.clone())],
            Lin::F => vec![(false, f.clone())],
            Lin::R => vec![
                (false, r_hat.clone()),
                (true, GSeries::one(order).scale(&q(1, 2))),
            ],
            Lin::Z => {
                return Err(AlienError::NotExpandable("z is not a series in 1/z2".into()).into())
            }
        };
        let base = if mo.m >= 0 { &e } else { &e_inv };
        let factor = base
            .pow(mo.m.unsigned_abs())
            .mul(&hat.scale(&Q::from_integer((-2 * mo.p).into())).exp()?);
        for (log_u, s) in parts.iter_mut() {
            *s = s.mul(&factor);
            for (exps, a) in c.terms() {
                let key = LrKey {
                    exps: *exps,
                    n: mo.n,
                    p: mo.p,
                    log_u: *log_u,
                };
                let add = s.scale_by(&Laurent::constant(a.clone()));
                let slot = out.remove(&key).unwrap_or_else(|| GSeries::zero(order));
                let sum = slot.add(&add);
                if !sum.is_zero() {
                    out.insert(key, sum);
                }
            }
        }
    }
    Ok(out)
}
