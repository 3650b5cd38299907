//! Directional Laplace transforms and the choice of integration ray.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::kernels::LogPoint;
use super::quad::integrate;
use super::BorelError;

/// An open interval of directions on the Riemann surface of the logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// `(-2 pi, 0)`.
    pub const I0: Interval = Interval {
        lo: -2.0 * PI,
        hi: 0.0,
    };
    /// `(-pi, pi)`.
    pub const I_PI: Interval = Interval { lo: -PI, hi: PI };
    /// `(-pi, 0)`.
    pub const I_PLUS: Interval = Interval { lo: -PI, hi: 0.0 };
    /// `(0, pi)`.
    pub const I_MINUS: Interval = Interval { lo: 0.0, hi: PI };

    pub fn shifted(&self, k: i32) -> Interval {
        let s = 2.0 * PI * k as f64;
        Interval {
            lo: self.lo + s,
            hi: self.hi + s,
        }
    }

    pub fn parse(s: &str) -> Option<Interval> {
        match s {
            "I0" => Some(Self::I0),
            "Ipi" => Some(Self::I_PI),
            "I+" | "Iplus" => Some(Self::I_PLUS),
            "I-" | "Iminus" => Some(Self::I_MINUS),
            _ => None,
        }
    }
}

/// A Borel–Laplace value with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SumValue {
    #[serde(serialize_with = "ser_c64")]
    pub value: Complex64,
    pub err: f64,
    pub theta: f64,
    pub evals: usize,
    pub t_max: f64,
}

pub(crate) fn ser_c64<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("c", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

/// Direction inside `interval`, at least `margin` away from its ends, for
/// which `Re(z e^(i theta)) > 0`: the midpoint of the admissible set.
pub fn choose_theta(interval: &Interval, z: &LogPoint, margin: f64) -> Result<f64, BorelError> {
    let lo = (interval.lo + margin).max(-z.arg - PI / 2.0);
    let hi = (interval.hi - margin).min(-z.arg + PI / 2.0);
    if hi - lo <= 2.0 * margin.min(0.05) {
        return Err(BorelError::OutsideHalfPlane);
    }
    Ok((lo + hi) / 2.0)
}

/// `int_0^(e^(i theta) oo) fhat(zeta) e^(-z zeta) d zeta`; `fhat` returns a
/// value with its own error estimate and `growth` bounds `|fhat|` on the ray.
pub fn laplace_ray<F>(
    fhat: F,
    z: Complex64,
    theta: f64,
    growth: f64,
    tol: f64,
) -> Result<SumValue, BorelError>
where
    F: Fn(Complex64) -> Result<(Complex64, f64), BorelError>,
{
    let dir = Complex64::from_polar(1.0, theta);
    let c = (z * dir).re;
    if c <= 1e-3 * z.norm().max(1.0) {
        return Err(BorelError::OutsideHalfPlane);
    }
    let margin = growth.max(1.0).ln() + 3.0;
    let t_max = ((1.0 / tol).ln() + margin) / c;
    let failure = std::cell::Cell::new(None::<BorelError>);
    let inner_err = std::cell::Cell::new(0.0);
    let integrand = |r: f64| {
        let zeta = dir * r;
        match fhat(zeta) {
            Ok((v, e)) => {
                let k = (-z * zeta).exp() * dir;
                inner_err.set(inner_err.get() + e * k.norm());
                v * k
            }
            Err(err) => {
                failure.set(Some(err));
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let pieces = (t_max * c).ceil().clamp(4.0, 64.0) as usize;
    let q = integrate(&integrand, 0.0, t_max, pieces, tol);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    if !q.converged {
        return Err(BorelError::QuadratureFailure {
            best: q.value,
            err: q.err,
        });
    }
    let tail = growth * (-c * t_max).exp() / c;
    // node errors are summed over every evaluation; scale by a panel width
    let node_err = inner_err.get() * t_max / q.evals.max(1) as f64;
    Ok(SumValue {
        value: q.value,
        err: q.err + tail + node_err,
        theta,
        evals: q.evals,
        t_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_transforms() {
        let z = Complex64::new(2.0, 1.0);
        let one =
            laplace_ray(|_| Ok((Complex64::new(1.0, 0.0), 0.0)), z, -0.3, 1.0, 1e-13).unwrap();
        assert!((one.value - 1.0 / z).norm() < 1e-12);
        let id = laplace_ray(|s| Ok((s, 0.0)), z, 0.2, 50.0, 1e-13).unwrap();
        assert!((id.value - 1.0 / (z * z)).norm() < 1e-12);
        assert!(laplace_ray(|s| Ok((s, 0.0)), z, 2.5, 1.0, 1e-10).is_err());
    }

    #[test]
    fn theta_choice() {
        let z = LogPoint::new(3.0, 0.0);
        let t = choose_theta(&Interval::I_PLUS, &z, 0.05).unwrap();
        assert!(t < 0.0 && t > -PI / 2.0);
        let far = LogPoint::new(3.0, 3.0 * PI);
        assert!(choose_theta(&Interval::I_PLUS, &far, 0.05).is_err());
    }
}
