//! Borel sums of the large-radius transseries, delegated to the sectorial
//! solutions `G+-` at `z1 = z2 + phi_u(z2)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::LrError;
use crate::borel::family::{g_pm, Lateral, Residual, Side, SumConfig};
use crate::borel::{BorelError, LogPoint};

/// `z2 = 1/(3 g_s^2 u^3)` and `z1 = z2 (1 - 2 g_s^2 u^2)^(3/2)` on the log
/// surface; `arg z2 = -2 arg g_s - 3 Arg u`, and the power is principal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LrPoint {
    pub z2: LogPoint,
    pub z1: LogPoint,
    /// `2 g_s^2 u^2`.
    pub w: Complex64,
}

pub fn lr_point(gs: &LogPoint, u: Complex64) -> Result<LrPoint, LrError> {
    if gs.modulus == 0.0 || u.norm() == 0.0 {
        return Err(LrError::Domain("g_s and u must be nonzero".into()));
    }
    let w = 2.0 * gs.value().powi(2) * u * u;
    if w.norm() >= 1.0 {
        return Err(LrError::Domain(format!(
            "|g_s^2 u^2| = {} is not below 1/2",
            w.norm() / 2.0
        )));
    }
    let z2 = LogPoint::new(
        1.0 / (3.0 * gs.modulus.powi(2) * u.norm().powi(3)),
        -2.0 * gs.arg - 3.0 * u.arg(),
    );
    let one = 1.0 - w;
    let z1 = LogPoint::new(z2.modulus * one.norm().powf(1.5), z2.arg + 1.5 * one.arg());
    Ok(LrPoint { z2, z1, w })
}

/// `R(g_s, u) = (1/2) log u - (1/4) log(1 - w) + z1 - z2`, principal logs.
pub fn r_value(gs: &LogPoint, u: Complex64) -> Result<Complex64, LrError> {
    let p = lr_point(gs, u)?;
    Ok(0.5 * u.ln() - 0.25 * (1.0 - p.w).ln() + p.z1.value() - p.z2.value())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LrValue {
    #[serde(serialize_with = "crate::borel::laplace::ser_c64")]
    pub value: Complex64,
    pub err: f64,
    pub route_gap: f64,
    pub theta: f64,
    pub z1_modulus: f64,
    pub z1_arg: f64,
}

/// `H+-(g_s, u, s1, s2) = G+-(z1, s1, -s2) + R(g_s, u)`.
pub fn lr_sum(
    side: Lateral,
    gs: &LogPoint,
    u: Complex64,
    sigma1: Complex64,
    sigma2: Complex64,
    cfg: &SumConfig,
) -> Result<LrValue, LrError> {
    let p = lr_point(gs, u)?;
    let g = g_pm(side, &p.z1, sigma1, -sigma2, cfg)?;
    let r = r_value(gs, u)?;
    Ok(LrValue {
        value: g.value + r,
        err: g.err,
        route_gap: g.route_gap,
        theta: g.theta,
        z1_modulus: p.z1.modulus,
        z1_arg: p.z1.arg,
    })
}

fn empty(e: LrError) -> LrError {
    match e {
        LrError::Borel(BorelError::Domain(s)) | LrError::Domain(s) => {
            LrError::Borel(BorelError::DomainEmpty(s))
        }
        LrError::Borel(BorelError::OutsideHalfPlane) => {
            LrError::Borel(BorelError::DomainEmpty("no admissible direction".into()))
        }
        other => other,
    }
}

/// Right: `H+(s1, s2) = H-(s1, s2 + i)`.
/// Left: `H+(e^(-i pi) g_s, s1, s2) = H-(g_s, s1 + log(1 - i s2), s2 / (1 - i s2))`.
pub fn lr_connection_check(
    which: Side,
    gs: &LogPoint,
    u: Complex64,
    sigma1: Complex64,
    sigma2: Complex64,
    cfg: &SumConfig,
) -> Result<Residual, LrError> {
    let i = Complex64::i();
    let (lhs, rhs) = match which {
        Side::Right => (
            lr_sum(Lateral::Plus, gs, u, sigma1, sigma2, cfg)?,
            lr_sum(Lateral::Minus, gs, u, sigma1, sigma2 + i, cfg)?,
        ),
        Side::Left => {
            let one = 1.0 - i * sigma2;
            if one.norm() < 1e-12 {
                return Err(BorelError::DomainEmpty("1 - i s2 vanishes".into()).into());
            }
            let turned = LogPoint::new(gs.modulus, gs.arg - PI);
            let l = lr_sum(Lateral::Plus, &turned, u, sigma1, sigma2, cfg).map_err(empty)?;
            let r = lr_sum(Lateral::Minus, gs, u, sigma1 + one.ln(), sigma2 / one, cfg)
                .map_err(empty)?;
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

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LrRealValue {
    #[serde(serialize_with = "crate::borel::laplace::ser_c64")]
    pub value: Complex64,
    pub imag_residual: f64,
    /// `|H+(a, b - i/2) - H-(a, b + i/2)|`.
    pub partner_gap: f64,
    pub err: f64,
}

/// `H+(g_s, u, a, b - i/2)` for real `u` and `arg(g_s^2 u^3) = 0`.
pub fn lr_real_check(
    gs: &LogPoint,
    u: f64,
    a: f64,
    b: f64,
    cfg: &SumConfig,
) -> Result<LrRealValue, LrError> {
    let uc = Complex64::new(u, 0.0);
    let p = lr_point(gs, uc)?;
    if p.z2.arg.abs() > 1e-12 {
        return Err(LrError::Domain(format!(
            "arg(g_s^2 u^3) = {} is not 0",
            -p.z2.arg
        )));
    }
    let half = Complex64::new(0.0, 0.5);
    let a = Complex64::new(a, 0.0);
    let plus = lr_sum(Lateral::Plus, gs, uc, a, b - half, cfg)?;
    let minus = lr_sum(Lateral::Minus, gs, uc, a, b + half, cfg)?;
    Ok(LrRealValue {
        value: plus.value,
        imag_residual: plus.value.im.abs(),
        partner_gap: (plus.value - minus.value).norm(),
        err: plus.err + minus.err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::large_radius::series::gen_h0;

    #[test]
    fn point_geometry() {
        let p = lr_point(&LogPoint::new(0.4, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        assert!((p.z2.modulus - 1.0 / 0.48).abs() < 1e-14);
        assert!((p.z1.modulus - p.z2.modulus * 0.68f64.powf(1.5)).abs() < 1e-13);
        assert!(lr_point(&LogPoint::new(0.8, 0.0), Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn r_against_series() {
        let gs = LogPoint::new(0.05, 0.2);
        let u = Complex64::new(1.3, 0.4);
        let r = crate::large_radius::series::gen_r(12);
        let x = gs.value().powi(2);
        assert!((r.eval(x, u) - r_value(&gs, u).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn sum_matches_partial_sums_at_small_coupling() {
        let gs = LogPoint::new(0.1, 0.0);
        let u = Complex64::new(1.0, 0.0);
        let cfg = SumConfig::default();
        let s = lr_sum(
            Lateral::Plus,
            &gs,
            u,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            &cfg,
        )
        .unwrap();
        let h = gen_h0(10).unwrap();
        let partial = h.eval(gs.value().powi(2), u);
        assert!(
            (s.value - partial).norm() < 1e-9,
            "{} vs {}",
            s.value,
            partial
        );
    }

    #[test]
    fn connections() {
        let cfg = SumConfig::default();
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let r = lr_connection_check(Side::Right, &LogPoint::new(0.4, 0.0), one, zero, one, &cfg)
            .unwrap();
        assert!(r.residual < 1e-10, "{r:?}");
        let gs = LogPoint::new(0.3, PI / 2.0);
        let l = lr_connection_check(
            Side::Left,
            &gs,
            Complex64::new(2.0, 0.0),
            zero,
            Complex64::new(0.0, 0.05),
            &cfg,
        )
        .unwrap();
        assert!(l.residual < 1e-8, "{l:?}");
    }

    #[test]
    fn real_on_positive_axis() {
        let cfg = SumConfig::default();
        let v = lr_real_check(&LogPoint::new(0.3, 0.0), 1.0, 0.5, 0.3, &cfg).unwrap();
        assert!(v.imag_residual < 1e-10 && v.partner_gap < 1e-10, "{v:?}");
    }
}
