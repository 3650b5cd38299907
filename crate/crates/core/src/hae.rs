//! The perturbative series of the double-scaling free energy.
//!
//! `psi = sum c_n z^-n` is the formal solution of
//! `psi'' + 2 psi' + (5/36) z^-2 psi = 0` with constant term 1,
//! `phi(z) = psi(-z)`, `g = log psi`, `f(z) = g(-z)`, and the transseries
//! components are `G_0 = g`, `G_m = ((-1)^(m-1)/m) exp(m (f - g))`.
//! With `z = 1/(3 lambda^2)` one has `g = sum_g a_g lambda^(2g-2)`, hence
//! `a_(n+1) = 3^n b_n`.

use num_traits::{One, Zero};

use serde::Serialize;

use crate::exact::{q, qi, Coeff, ExactError, PowerSeries, Q};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HaeError {
    #[error("ODE/closed-form disagreement: {0}")]
    RouteMismatch(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyName {
    Psi,
    Phi,
    G,
    F,
    Gn(u32),
    FreeEnergy,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySeries {
    pub name: FamilyName,
    pub series: PowerSeries<Q>,
    /// `a_2, a_3, ...` for [`FamilyName::FreeEnergy`].
    pub free_energy: Option<Vec<Q>>,
}

impl FamilySeries {
    fn of(name: FamilyName, series: PowerSeries<Q>) -> Self {
        FamilySeries {
            name,
            series,
            free_energy: None,
        }
    }
}

/// `c_0..c_N` from `c_(n+1)/c_n = (n+1/6)(n+5/6)/(2(n+1))`.
pub fn gen_c_coeffs(n: usize) -> Vec<Q> {
    let mut c = Vec::with_capacity(n + 1);
    c.push(Q::one());
    for k in 0..n {
        let kq = qi(k as i64);
        let r = (&kq + q(1, 6)) * (&kq + q(5, 6)) / qi(2 * (k as i64 + 1));
        let next = &c[k] * r;
        c.push(next);
    }
    c
}

/// Coefficients of `psi` solved order by order from the linear ODE:
/// the `z^-(k+2)` slot of the operator involves `c_(k+1)` only through
/// `2 psi'`, with weight `-2(k+1)`.
pub(crate) fn psi_from_ode(n: usize) -> PowerSeries<Q> {
    let work = n + 3;
    let mut psi = PowerSeries::<Q>::one(work);
    for k in 0..n {
        let r = airy_operator(&psi.truncate(work));
        let slot = r.coeff(k + 2);
        let c = slot / qi(2 * (k as i64 + 1));
        let mut coeffs = psi.coeffs().to_vec();
        coeffs[k + 1] = c;
        psi = PowerSeries::new(work, coeffs);
    }
    psi.truncate(n)
}

fn airy_operator<T: Coeff>(s: &PowerSeries<T>) -> PowerSeries<T> {
    let d1 = s.diff_z();
    let d2 = d1.diff_z();
    let pot = s.shift_down(2).scale(&q(5, 36));
    d2.add(&d1.scale(&qi(2))).add(&pot)
}

/// `psi` and `phi`; `psi` is built by two independent routes which must agree.
pub fn gen_psi_phi(n: usize) -> Result<(FamilySeries, FamilySeries), HaeError> {
    let closed = PowerSeries::new(n, gen_c_coeffs(n));
    let ode = psi_from_ode(n);
    if closed != ode {
        let k = (0..=n)
            .find(|&k| closed.coeff(k) != ode.coeff(k))
            .unwrap_or(0);
        return Err(HaeError::RouteMismatch(format!("psi coefficient {k}")));
    }
    let phi = closed.reflect();
    Ok((
        FamilySeries::of(FamilyName::Psi, closed),
        FamilySeries::of(FamilyName::Phi, phi),
    ))
}

/// `g = log psi`, `f(z) = g(-z)`, and the free-energy list `a_2..a_(N+1)`.
pub fn gen_g_f(n: usize) -> Result<(FamilySeries, FamilySeries, FamilySeries), HaeError> {
    let (psi, _) = gen_psi_phi(n)?;
    let g = psi.series.log()?;
    let f = g.reflect();
    let mut a = Vec::with_capacity(n);
    let mut three = Q::one();
    for k in 1..=n {
        three *= qi(3);
        a.push(&three * g.coeff(k));
    }
    let fe = FamilySeries {
        name: FamilyName::FreeEnergy,
        series: g.clone(),
        free_energy: Some(a),
    };
    Ok((
        FamilySeries::of(FamilyName::G, g),
        FamilySeries::of(FamilyName::F, f),
        fe,
    ))
}

/// `G_0 = g, G_1, ..., G_nmax`; `G_1` is computed both as `exp(f - g)` and as
/// `phi/psi`.
pub fn gen_gn(n: usize, nmax: u32) -> Result<Vec<FamilySeries>, HaeError> {
    let (psi, phi) = gen_psi_phi(n)?;
    let (g, f, _) = gen_g_f(n)?;
    let by_exp = f.series.sub(&g.series).exp()?;
    let by_quot = phi.series.div(&psi.series)?;
    if by_exp != by_quot {
        return Err(HaeError::RouteMismatch(
            "G_1: exp(f-g) differs from phi/psi".into(),
        ));
    }
    let mut out = vec![FamilySeries::of(FamilyName::Gn(0), g.series)];
    let mut power = PowerSeries::one(n);
    for m in 1..=nmax {
        power = power.mul(&by_exp);
        let sign = if m % 2 == 1 { 1 } else { -1 };
        out.push(FamilySeries::of(
            FamilyName::Gn(m),
            power.scale(&q(sign, m as i64)),
        ));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ode {
    /// `s'' + 2 s' + (5/36) z^-2 s`.
    AiryLinear,
    /// `s'' + (s')^2 + 2 s' + (5/36) z^-2`.
    HaeNonlinear,
}

/// Left-hand side of the chosen ODE evaluated on `s`; carries order `N-2`.
pub fn ode_residual<T: Coeff>(s: &PowerSeries<T>, ode: Ode) -> PowerSeries<T> {
    match ode {
        Ode::AiryLinear => airy_operator(s),
        Ode::HaeNonlinear => {
            let d1 = s.diff_z();
            let d2 = d1.diff_z();
            let n = d2.order();
            let pot = PowerSeries::monomial(2, T::from_rational(&q(5, 36)), n);
            d2.add(&d1.mul(&d1)).add(&d1.scale(&qi(2))).add(&pot)
        }
    }
}

/// `b_(n+1) / (n b_n)` for `n` in `range`; tends to `1/2`.
pub fn ratio_profile(
    b: &PowerSeries<Q>,
    range: std::ops::RangeInclusive<usize>,
) -> Vec<(usize, Q)> {
    range
        .filter(|&n| n >= 1 && n < b.order() && !b.coeff(n).is_zero())
        .map(|n| (n, b.coeff(n + 1) / (qi(n as i64) * b.coeff(n))))
        .collect()
}

/// Table layouts used by the CLI.
pub fn c_table(n: usize) -> serde_json::Value {
    serde_json::json!({ "c_n": gen_c_coeffs(n).iter().map(crate::exact::scalar::fmt_q).collect::<Vec<_>>() })
}

pub fn ag_table(max_g: usize) -> Result<serde_json::Value, HaeError> {
    let n = max_g.saturating_sub(1).max(1);
    let (_, _, fe) = gen_g_f(n)?;
    let a: Vec<String> = fe
        .free_energy
        .unwrap_or_default()
        .iter()
        .take(max_g.saturating_sub(1))
        .map(crate::exact::scalar::fmt_q)
        .collect();
    Ok(serde_json::json!({ "a_g": a }))
}

pub fn gn_table(n: usize, nmax: u32) -> Result<serde_json::Value, HaeError> {
    let gs = gen_gn(n, nmax)?;
    let mut m = serde_json::Map::new();
    for (k, s) in gs.iter().enumerate() {
        m.insert(k.to_string(), s.series.to_json());
    }
    Ok(serde_json::json!({ "G_n": m }))
}
