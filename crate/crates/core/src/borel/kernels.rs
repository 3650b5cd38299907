//! Closed-form Borel transforms `A`, `A_+` and the convolution `B = zeta^(-5/6)/Gamma(1/6) * A`.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use super::quad::integrate_weighted;
use super::BorelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Cut along `[2, oo)`.
    Minus,
    /// Cut along `(-oo, -2]`.
    Plus,
}

/// A point of the Riemann surface of the logarithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogPoint {
    pub modulus: f64,
    pub arg: f64,
}

impl LogPoint {
    pub fn new(modulus: f64, arg: f64) -> Self {
        LogPoint { modulus, arg }
    }

    /// Principal lift of a complex number.
    pub fn principal(z: Complex64) -> Self {
        LogPoint {
            modulus: z.norm(),
            arg: z.arg(),
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.arg)
    }

    /// `e^(2 pi i k) z`.
    pub fn turn(&self, k: i32) -> Self {
        LogPoint {
            arg: self.arg + 2.0 * PI * k as f64,
            ..*self
        }
    }

    pub fn conj(&self) -> Self {
        LogPoint {
            arg: -self.arg,
            ..*self
        }
    }
}

fn on_cut(zeta: Complex64, branch: Branch) -> bool {
    let scale = 1e-14 * zeta.norm().max(1.0);
    match branch {
        Branch::Minus => zeta.im.abs() <= scale && zeta.re >= 2.0,
        Branch::Plus => zeta.im.abs() <= scale && zeta.re <= -2.0,
    }
}

/// `A(zeta) = zeta^(-1/6) (1 - zeta/2)^(-1/6) / Gamma(5/6)` and its mirror
/// `A_+(zeta) = zeta^(-1/6) (1 + zeta/2)^(-1/6) / Gamma(5/6)`; the first
/// factor uses the supplied argument.
pub fn eval_ahat(zeta: LogPoint, branch: Branch) -> Result<Complex64, BorelError> {
    let z = zeta.value();
    if zeta.modulus == 0.0 {
        return Err(BorelError::Domain("A is singular at the origin".into()));
    }
    if on_cut(z, branch) {
        return Err(BorelError::BranchCut);
    }
    let lead = Complex64::from_polar(zeta.modulus.powf(-1.0 / 6.0), -zeta.arg / 6.0);
    let second = match branch {
        Branch::Minus => 1.0 - z / 2.0,
        Branch::Plus => 1.0 + z / 2.0,
    };
    Ok(lead * second.powf(-1.0 / 6.0) / gamma(5.0 / 6.0))
}

/// `B` by quadrature of the convolution integral; the factors `t^(-5/6)` and
/// `(1-t)^(-1/6)` are absorbed by Gauss–Jacobi end panels.
pub fn eval_bhat(
    zeta: Complex64,
    branch: Branch,
    tol: f64,
) -> Result<(Complex64, f64), BorelError> {
    if on_cut(zeta, branch) {
        return Err(BorelError::BranchCut);
    }
    let w = match branch {
        Branch::Minus => zeta / 2.0,
        Branch::Plus => -zeta / 2.0,
    };
    let norm = 1.0 / (2.0 * PI);
    let f = |t: f64| (1.0 - (1.0 - t) * w).powf(-1.0 / 6.0) * norm;
    let q = integrate_weighted(&f, -1.0 / 6.0, -5.0 / 6.0, tol);
    if !q.converged {
        return Err(BorelError::QuadratureFailure {
            best: q.value,
            err: q.err,
        });
    }
    Ok((q.value, q.err))
}

/// `dB/dzeta` from the same integral differentiated under the sign.
pub fn eval_bhat_deriv(
    zeta: Complex64,
    branch: Branch,
    tol: f64,
) -> Result<(Complex64, f64), BorelError> {
    if on_cut(zeta, branch) {
        return Err(BorelError::BranchCut);
    }
    let (w, s) = match branch {
        Branch::Minus => (zeta / 2.0, 0.5),
        Branch::Plus => (-zeta / 2.0, -0.5),
    };
    let norm = s / (6.0 * 2.0 * PI);
    let f = |t: f64| (1.0 - (1.0 - t) * w).powf(-7.0 / 6.0) * norm;
    let q = integrate_weighted(&f, 5.0 / 6.0, -5.0 / 6.0, tol);
    if !q.converged {
        return Err(BorelError::QuadratureFailure {
            best: q.value,
            err: q.err,
        });
    }
    Ok((q.value, q.err))
}

/// Maclaurin sum `sum c_n zeta^n / n!` for `|zeta| < 2`.
pub fn bhat_maclaurin(zeta: Complex64, branch: Branch, terms: usize) -> Complex64 {
    let x = match branch {
        Branch::Minus => zeta / 2.0,
        Branch::Plus => -zeta / 2.0,
    };
    let mut t = Complex64::new(1.0, 0.0);
    let mut s = t;
    for n in 0..terms {
        let nf = n as f64;
        t *= x * ((nf + 1.0 / 6.0) * (nf + 5.0 / 6.0) / ((nf + 1.0) * (nf + 1.0)));
        s += t;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q_to_f64;
    use crate::hae::gen_c_coeffs;

    #[test]
    fn ahat_values() {
        let g = gamma(5.0 / 6.0);
        let a = eval_ahat(LogPoint::new(1.0, 0.0), Branch::Plus).unwrap();
        assert!((a - 1.5f64.powf(-1.0 / 6.0) / g).norm() < 1e-14);
        let m = eval_ahat(LogPoint::new(1.0, PI), Branch::Minus).unwrap();
        let want = Complex64::from_polar(1.5f64.powf(-1.0 / 6.0) / g, -PI / 6.0);
        assert!((m - want).norm() < 1e-14);
        assert_eq!(
            eval_ahat(LogPoint::new(3.0, 0.0), Branch::Minus),
            Err(BorelError::BranchCut)
        );
        let small = eval_ahat(LogPoint::new(1e-8, 0.7), Branch::Minus).unwrap();
        let lead = Complex64::from_polar(1e-8f64.powf(1.0 / 6.0), 0.7 / 6.0);
        assert!((small * g * lead - 1.0).norm() < 1e-8);
    }

    #[test]
    fn bhat_against_exact_coefficients() {
        let (b0, _) = eval_bhat(Complex64::new(0.0, 0.0), Branch::Minus, 1e-14).unwrap();
        assert!((b0.re - 1.0).abs() < 1e-13);
        let c = gen_c_coeffs(60);
        let mut fact = 1.0;
        let mut s = 0.0;
        for (n, cn) in c.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            s += q_to_f64(cn) / fact;
        }
        let (b1, err) = eval_bhat(Complex64::new(1.0, 0.0), Branch::Minus, 1e-14).unwrap();
        assert!((b1.re - s).abs() < 1e-12, "{b1} vs {s}, err {err}");
    }

    #[test]
    fn mirror_identity() {
        let z = Complex64::new(1.0, 1.0);
        let (p, _) = eval_bhat(z, Branch::Plus, 1e-14).unwrap();
        let (m, _) = eval_bhat(-z, Branch::Minus, 1e-14).unwrap();
        assert!((p - m).norm() < 1e-13);
        let mac = bhat_maclaurin(z, Branch::Plus, 200);
        assert!((p - mac).norm() < 1e-12);
    }

    #[test]
    fn derivative_by_differences() {
        let z = Complex64::new(0.7, -0.4);
        let h = 1e-4;
        let f = |x: Complex64| bhat_maclaurin(x, Branch::Minus, 200);
        let fd = (f(z + h) - f(z - h)) / (2.0 * h);
        let (d, _) = eval_bhat_deriv(z, Branch::Minus, 1e-14).unwrap();
        assert!((d - fd).norm() < 1e-7);
    }
}
