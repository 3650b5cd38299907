//! Borel sums of `psi`, `phi`, `g`, `f`, the sectorial solutions `G+-` and
//! the numerical connection checks.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::kernels::{eval_bhat, eval_bhat_deriv, Branch, LogPoint};
use super::laplace::{choose_theta, laplace_ray, Interval, SumValue};
use super::BorelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Psi,
    Phi,
    G,
    F,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "psi" => Some(Family::Psi),
            "phi" => Some(Family::Phi),
            "g" => Some(Family::G),
            "f" => Some(Family::F),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SumConfig {
    /// Tolerance of each Laplace integral.
    pub tol: f64,
    /// Tolerance of each inner evaluation of `B`.
    pub inner_tol: f64,
    /// Distance kept from singular directions.
    pub delta_ray: f64,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig {
            tol: 1e-13,
            inner_tol: 1e-14,
            delta_ray: 0.05,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lateral {
    Plus,
    Minus,
}

impl Lateral {
    pub fn interval(&self) -> Interval {
        match self {
            Lateral::Plus => Interval::I_PLUS,
            Lateral::Minus => Interval::I_MINUS,
        }
    }
}

fn branch_of(name: Family) -> Branch {
    match name {
        Family::Psi | Family::G => Branch::Minus,
        Family::Phi | Family::F => Branch::Plus,
    }
}

/// `z L^theta B(z)` or `z L^theta B_+(z)`.
fn linear_sum(
    branch: Branch,
    z: &LogPoint,
    interval: &Interval,
    cfg: &SumConfig,
) -> Result<SumValue, BorelError> {
    let theta = choose_theta(interval, z, cfg.delta_ray)?;
    let singular = match branch {
        Branch::Minus => 0.0,
        Branch::Plus => PI,
    };
    let off = ((theta - singular) / (2.0 * PI)).round() * 2.0 * PI + singular;
    if (theta - off).abs() < cfg.delta_ray {
        return Err(BorelError::DomainEmpty(format!(
            "direction {theta} is a singular ray"
        )));
    }
    let zc = z.value();
    let inner = cfg.inner_tol;
    let l = laplace_ray(|s| eval_bhat(s, branch, inner), zc, theta, 2.0, cfg.tol)?;
    Ok(SumValue {
        value: zc * l.value,
        err: zc.norm() * l.err,
        ..l
    })
}

fn principal_log(w: Complex64) -> Result<Complex64, BorelError> {
    if w.re < 0.0 && w.im.abs() <= 1e-12 * w.norm() {
        return Err(BorelError::BranchError);
    }
    Ok(w.ln())
}

/// `S^I` of one of the four family members at a point of the log surface.
pub fn sum_family(
    name: Family,
    z: &LogPoint,
    interval: &Interval,
    cfg: &SumConfig,
) -> Result<SumValue, BorelError> {
    let lin = linear_sum(branch_of(name), z, interval, cfg)?;
    match name {
        Family::Psi | Family::Phi => Ok(lin),
        Family::G | Family::F => {
            let v = principal_log(lin.value)?;
            Ok(SumValue {
                value: v,
                err: lin.err / lin.value.norm(),
                ..lin
            })
        }
    }
}

/// `S(psi')` from the transform `-zeta B'(zeta)`.
pub fn sum_psi_prime(
    z: &LogPoint,
    interval: &Interval,
    cfg: &SumConfig,
) -> Result<SumValue, BorelError> {
    let theta = choose_theta(interval, z, cfg.delta_ray)?;
    let inner = cfg.inner_tol;
    let f = |s: Complex64| {
        eval_bhat_deriv(s, Branch::Minus, inner).map(|(d, e)| (-s * d, e * s.norm()))
    };
    laplace_ray(f, z.value(), theta, 4.0, cfg.tol)
}

/// The two routes for a sectorial solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GValue {
    #[serde(serialize_with = "super::laplace::ser_c64")]
    pub value: Complex64,
    pub err: f64,
    /// `|log route - partial-sum route|`.
    pub route_gap: f64,
    pub theta: f64,
}

/// `G+-(z, s1, s2) = s1 + S g + log(1 + s2 e^(-2z) S phi / S psi)`, checked
/// against the partial sums of `sum ((-1)^(n-1)/n) (s2 e^(-2z) S phi / S psi)^n`.
pub fn g_pm(
    side: Lateral,
    z: &LogPoint,
    sigma1: Complex64,
    sigma2: Complex64,
    cfg: &SumConfig,
) -> Result<GValue, BorelError> {
    let zc = z.value();
    let x = sigma2 * (-2.0 * zc).exp();
    if x.norm() >= 0.5 {
        return Err(BorelError::Domain(format!(
            "|s2 e^(-2z)| = {} is not below 1/2",
            x.norm()
        )));
    }
    let interval = side.interval();
    let psi = sum_family(Family::Psi, z, &interval, cfg)?;
    let g = SumValue {
        value: principal_log(psi.value)?,
        err: psi.err / psi.value.norm(),
        ..psi
    };
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = g.err;
    let mut gap = 0.0;
    if sigma2 != Complex64::new(0.0, 0.0) {
        let phi = sum_family(Family::Phi, z, &interval, cfg)?;
        let w = x * phi.value / psi.value;
        let by_log = (1.0 + w).ln();
        let mut by_sum = Complex64::new(0.0, 0.0);
        let mut wn = Complex64::new(1.0, 0.0);
        for n in 1..400 {
            wn *= w;
            let t = wn * (if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64);
            by_sum += t;
            if t.norm() < 1e-18 {
                break;
            }
        }
        gap = (by_log - by_sum).norm();
        total += by_log;
        err +=
            w.norm() * (phi.err / phi.value.norm() + psi.err / psi.value.norm()) / (1.0 - w.norm());
    }
    Ok(GValue {
        value: sigma1 + g.value + total,
        err,
        route_gap: gap,
        theta: g.theta,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residual {
    #[serde(serialize_with = "super::laplace::ser_c64")]
    pub lhs: Complex64,
    #[serde(serialize_with = "super::laplace::ser_c64")]
    pub rhs: Complex64,
    pub residual: f64,
    pub err: f64,
}

/// Right: `G+(z, s1, s2) = G-(z, s1, s2 - i)`.
/// Left: `G+(e^(2 pi i) z, s1, s2) = G-(z, s1 + log(1 + i s2), s2 / (1 + i s2))`.
pub fn connection_check(
    which: Side,
    z: &LogPoint,
    sigma1: Complex64,
    sigma2: Complex64,
    cfg: &SumConfig,
) -> Result<Residual, BorelError> {
    let i = Complex64::i();
    let (lhs, rhs) = match which {
        Side::Right => {
            let l = g_pm(Lateral::Plus, z, sigma1, sigma2, cfg)?;
            let r = g_pm(Lateral::Minus, z, sigma1, sigma2 - i, cfg)?;
            (l, r)
        }
        Side::Left => {
            let one = 1.0 + i * sigma2;
            if one.norm() < 1e-12 {
                return Err(BorelError::DomainEmpty("1 + i s2 vanishes".into()));
            }
            let up = z.turn(1);
            let l = g_pm(Lateral::Plus, &up, sigma1, sigma2, cfg).map_err(empty)?;
            let r = g_pm(Lateral::Minus, z, sigma1 + one.ln(), sigma2 / one, cfg).map_err(empty)?;
            (l, r)
        }
    };
    Ok(Residual {
        lhs: lhs.value,
        rhs: rhs.value,
        residual: (lhs.value - rhs.value).norm(),
        err: lhs.err + rhs.err,
    })
}

fn empty(e: BorelError) -> BorelError {
    match e {
        BorelError::Domain(s) => BorelError::DomainEmpty(s),
        BorelError::OutsideHalfPlane => BorelError::DomainEmpty("no admissible direction".into()),
        other => other,
    }
}

/// `S^I0 psi(z) - S^I0 psi(e^(2 pi i) z) + i e^(-2z) S^Ipi phi(z)`.
pub fn linear_identity_residual(z: &LogPoint, cfg: &SumConfig) -> Result<Residual, BorelError> {
    let a = sum_family(Family::Psi, z, &Interval::I0, cfg)?;
    let b = sum_family(Family::Psi, &z.turn(1), &Interval::I0, cfg)?;
    let c = sum_family(Family::Phi, z, &Interval::I_PI, cfg)?;
    let rhs = b.value - Complex64::i() * (-2.0 * z.value()).exp() * c.value;
    Ok(Residual {
        lhs: a.value,
        rhs,
        residual: (a.value - rhs).norm(),
        err: a.err + b.err + c.err,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ray {
    Arg0,
    ArgPi,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MedianValue {
    #[serde(serialize_with = "super::laplace::ser_c64")]
    pub value: Complex64,
    pub imag_residual: f64,
    pub err: f64,
}

/// `G-(x, a, b - i/2)` on `arg z = 0`, or
/// `G-(x e^(-i pi), a - i theta/2, -i(1 - e^(i theta)))` on `arg z = -pi`.
pub fn median_real_check(
    x: f64,
    a: f64,
    b: f64,
    ray: Ray,
    theta: f64,
    cfg: &SumConfig,
) -> Result<MedianValue, BorelError> {
    if x <= 0.0 {
        return Err(BorelError::Domain("x must be positive".into()));
    }
    let i = Complex64::i();
    let v = match ray {
        Ray::Arg0 => {
            let bound = 0.25 * (1.0 + 4.0 * b * b).ln();
            if x <= bound {
                return Err(BorelError::Domain(format!("x must exceed {bound}")));
            }
            g_pm(
                Lateral::Minus,
                &LogPoint::new(x, 0.0),
                a.into(),
                b - 0.5 * i,
                cfg,
            )?
        }
        Ray::ArgPi => {
            let s2 = -i * (1.0 - Complex64::from_polar(1.0, theta));
            if s2.norm() > 0.0 {
                let bound = 0.5 * (2.0 * s2.norm()).ln();
                if -x <= bound {
                    return Err(BorelError::DomainEmpty(format!(
                        "theta = {theta} leaves no real point at x = {x}"
                    )));
                }
            }
            let s1 = a - i * theta / 2.0;
            g_pm(Lateral::Minus, &LogPoint::new(x, -PI), s1, s2, cfg)?
        }
    };
    Ok(MedianValue {
        value: v.value,
        imag_residual: v.value.im.abs(),
        err: v.err,
    })
}

/// `G'' + G'^2 + 2G' + (5/36) z^-2` at `z` by five-point differences.
pub fn ode_fd_residual(
    side: Lateral,
    z: &LogPoint,
    sigma1: Complex64,
    sigma2: Complex64,
    h: f64,
    cfg: &SumConfig,
) -> Result<f64, BorelError> {
    let zc = z.value();
    let at = |k: f64| -> Result<Complex64, BorelError> {
        let p = zc + h * k;
        let lp = LogPoint::new(p.norm(), z.arg + (p / zc).arg());
        Ok(g_pm(side, &lp, sigma1, sigma2, cfg)?.value)
    };
    let (m2, m1, c0, p1, p2) = (at(-2.0)?, at(-1.0)?, at(0.0)?, at(1.0)?, at(2.0)?);
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c0 + 16.0 * p1 - p2) / (12.0 * h * h);
    Ok((d2 + d1 * d1 + 2.0 * d1 + 5.0 / 36.0 / (zc * zc)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SumConfig {
        SumConfig::default()
    }

    #[test]
    fn phi_tends_to_one() {
        let v = sum_family(
            Family::Phi,
            &LogPoint::new(50.0, 0.0),
            &Interval::I_PI,
            &cfg(),
        )
        .unwrap();
        assert!((v.value - 1.0).norm() < 2e-3);
    }

    #[test]
    fn g_leading_term() {
        let z = LogPoint::new(20.0, PI / 4.0);
        let v = sum_family(Family::G, &z, &Interval::I_MINUS, &cfg()).unwrap();
        let r = v.value - (5.0 / 72.0) / z.value();
        assert!(r.norm() < 1e-3 && r.norm() > 1e-6);
    }

    #[test]
    fn right_connection_at_three() {
        let z = LogPoint::new(3.0, 0.0);
        let r = connection_check(Side::Right, &z, 0.0.into(), 1.0.into(), &cfg()).unwrap();
        assert!(r.residual < 1e-9, "{r:?}");
        let r0 = connection_check(Side::Right, &z, 0.0.into(), 0.0.into(), &cfg()).unwrap();
        assert!(r0.residual < 1e-9, "{r0:?}");
    }
}
