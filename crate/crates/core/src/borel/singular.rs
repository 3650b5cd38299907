//! Borel-plane singularity estimates and optimal-truncation tables.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::family::{sum_family, Family, SumConfig};
use super::kernels::LogPoint;
use super::laplace::Interval;
use super::BorelError;
use crate::exact::{q_to_f64, qi, Q};
use crate::hae;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ratio,
    Pade,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityEstimate {
    pub method: Method,
    /// `None` when the data point to an entire function.
    #[serde(serialize_with = "ser_opt_c64")]
    pub estimate: Option<Complex64>,
    pub divergent: bool,
    /// Successive estimates, for inspection.
    pub trail: Vec<f64>,
}

fn ser_opt_c64<S: serde::Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    match z {
        Some(z) => s.serialize_some(&[z.re, z.im]),
        None => s.serialize_none(),
    }
}

/// `b_(n+1) / n!` for `n < count`: the Borel transform of `g` minus its constant.
pub fn g_borel_coeffs(count: usize) -> Result<Vec<Q>, BorelError> {
    let (g, _, _) = hae::gen_g_f(count + 1)?;
    let mut fact = Q::one();
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            fact *= qi(n as i64);
        }
        out.push(g.series.coeff(n + 1) / &fact);
    }
    Ok(out)
}

/// `c_n / n!`, the Maclaurin coefficients of `B`.
pub fn bhat_coeffs(count: usize) -> Vec<Q> {
    let c = hae::gen_c_coeffs(count.saturating_sub(1));
    let mut fact = Q::one();
    c.into_iter()
        .enumerate()
        .map(|(n, cn)| {
            if n > 0 {
                fact = &fact * qi(n as i64);
            }
            cn / &fact
        })
        .collect()
}

const MIN_COEFFS: usize = 40;

/// Nearest singularity of `sum a_n zeta^n`.
pub fn singularity_locate(coeffs: &[Q], method: Method) -> Result<SingularityEstimate, BorelError> {
    if coeffs.len() < MIN_COEFFS {
        return Err(BorelError::InsufficientCoefficients(coeffs.len()));
    }
    match method {
        Method::Ratio => Ok(ratio(coeffs)),
        Method::Pade => pade(coeffs),
    }
}

fn ratio(a: &[Q]) -> SingularityEstimate {
    let r: Vec<f64> = a
        .windows(2)
        .map(|w| {
            if w[1].is_zero() {
                f64::INFINITY
            } else {
                q_to_f64(&(&w[0] / &w[1]))
            }
        })
        .collect();
    let tail = &r[r.len() / 2..];
    // ratios growing like n mean an entire function
    let n0 = (r.len() / 2) as f64;
    let n1 = (r.len() - 1) as f64;
    let slope = (tail[tail.len() - 1].abs() - tail[0].abs()) / (n1 - n0);
    if !tail.iter().all(|x| x.is_finite()) || slope > 0.25 {
        return SingularityEstimate {
            method: Method::Ratio,
            estimate: None,
            divergent: true,
            trail: tail.to_vec(),
        };
    }
    // second-order Richardson on r_n = R + A/n + B/n^2
    let k = 2usize;
    let mut trail = Vec::new();
    for start in (r.len() / 2)..(r.len() - k) {
        let mut s = 0.0;
        for j in 0..=k {
            let n = (start + j + 1) as f64;
            let sign = if (k + j).is_multiple_of(2) { 1.0 } else { -1.0 };
            s += sign * r[start + j] * n.powi(k as i32) / (factorial(j) * factorial(k - j));
        }
        trail.push(s);
    }
    let est = *trail.last().unwrap_or(&r[r.len() - 1]);
    SingularityEstimate {
        method: Method::Ratio,
        estimate: Some(Complex64::new(est, 0.0)),
        divergent: false,
        trail,
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Denominator `1 + q_1 x + ... + q_m x^m` of the `[l/m]` approximant.
fn pade_denominator(a: &[Q], l: usize, m: usize) -> Option<Vec<Q>> {
    // sum_{j=1..m} q_j a_{k-j} = -a_k for k = l+1..l+m
    let mut rows: Vec<Vec<Q>> = (1..=m)
        .map(|i| {
            let k = l + i;
            let mut row: Vec<Q> = (1..=m)
                .map(|j| if k >= j { a[k - j].clone() } else { Q::zero() })
                .collect();
            row.push(-a[k].clone());
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, piv);
        let p = rows[col][col].clone();
        for x in rows[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[col].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    let mut q = vec![Q::one()];
    q.extend(rows.into_iter().map(|r| r[m].clone()));
    Some(q)
}

fn roots(q: &[Q]) -> Vec<Complex64> {
    let qf: Vec<f64> = q.iter().map(q_to_f64).collect();
    let deg = qf.iter().rposition(|c| *c != 0.0).unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    let lead = qf[deg];
    let mut c = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        c[(i, deg - 1)] = -qf[i] / lead;
    }
    c.complex_eigenvalues().iter().copied().collect()
}

fn nearest(q: &[Q]) -> Option<Complex64> {
    roots(q)
        .into_iter()
        .min_by(|a, b| a.norm().total_cmp(&b.norm()))
}

fn pade(a: &[Q]) -> Result<SingularityEstimate, BorelError> {
    let m = 12usize.min((a.len() - 1) / 2);
    let mut trail = Vec::new();
    let mut last = None;
    for mm in [m - 4, m - 2, m] {
        let q = pade_denominator(a, mm, mm)
            .ok_or_else(|| BorelError::Domain("singular Pade system".into()))?;
        let p = nearest(&q);
        trail.push(p.map_or(f64::INFINITY, |p| p.norm()));
        last = p;
    }
    let n = trail.len();
    let drifting = trail[n - 1] > 1.3 * trail[n - 3] || !trail[n - 1].is_finite();
    if drifting {
        return Ok(SingularityEstimate {
            method: Method::Pade,
            estimate: None,
            divergent: true,
            trail,
        });
    }
    Ok(SingularityEstimate {
        method: Method::Pade,
        estimate: last,
        divergent: false,
        trail,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GevreyTable {
    /// `errors[k]` is the error with `N = k + 1` retained terms.
    pub errors: Vec<f64>,
    pub argmin: usize,
    pub decreasing_before_min: bool,
    pub unimodal: bool,
}

/// `|value - sum_{n<N} coeffs_n z^-n|` for `N = 1..=coeffs.len()`.
pub fn truncation_table(value: Complex64, coeffs: &[Complex64], z: Complex64) -> GevreyTable {
    let mut partial = Complex64::new(0.0, 0.0);
    let mut errors = Vec::with_capacity(coeffs.len());
    let zi = 1.0 / z;
    let mut p = Complex64::new(1.0, 0.0);
    for c in coeffs {
        partial += c * p;
        p *= zi;
        errors.push((value - partial).norm());
    }
    let argmin = errors
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map_or(0, |x| x.0);
    let decreasing_before_min = errors[..=argmin].windows(2).all(|w| w[1] < w[0]);
    let increasing_after = errors[argmin..].windows(2).all(|w| w[1] > w[0]);
    GevreyTable {
        errors,
        argmin: argmin + 1,
        decreasing_before_min,
        unimodal: decreasing_before_min && increasing_after,
    }
}

/// Truncation errors of `g` against its Borel sum at `z`.
pub fn gevrey_check(
    z: &LogPoint,
    interval: &Interval,
    n_max: usize,
    cfg: &SumConfig,
) -> Result<GevreyTable, BorelError> {
    if z.modulus < 5.0 {
        return Err(BorelError::Domain("gevrey table needs |z| >= 5".into()));
    }
    let s = sum_family(Family::G, z, interval, cfg)?;
    let (g, _, _) = hae::gen_g_f(n_max)?;
    let b: Vec<Complex64> = (0..n_max)
        .map(|n| Complex64::new(q_to_f64(&g.series.coeff(n)), 0.0))
        .collect();
    Ok(truncation_table(s.value, &b, z.value()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn borel_of_g_points_to_two() {
        let a = g_borel_coeffs(80).unwrap();
        let r = singularity_locate(&a, Method::Ratio).unwrap();
        let e = r.estimate.unwrap();
        assert!((e.re - 2.0).abs() < 0.2, "{e}");
        let p = singularity_locate(&a, Method::Pade).unwrap();
        assert!((p.estimate.unwrap().norm() - 2.0).abs() < 0.2, "{p:?}");
    }

    #[test]
    fn entire_input_is_flagged() {
        let mut fact = Q::one();
        let a: Vec<Q> = (0..60)
            .map(|n| {
                if n > 0 {
                    fact = &fact * qi(n);
                }
                Q::one() / &fact
            })
            .collect();
        assert!(singularity_locate(&a, Method::Ratio).unwrap().divergent);
        assert!(singularity_locate(&a, Method::Pade).unwrap().divergent);
        assert!(singularity_locate(&a[..10], Method::Ratio).is_err());
    }

    #[test]
    fn convergent_series_has_no_optimum() {
        let z = Complex64::new(3.0, 0.0);
        let value = 1.0 / (z - 1.0);
        let c: Vec<Complex64> = (0..30)
            .map(|n| Complex64::new(if n == 0 { 0.0 } else { 1.0 }, 0.0))
            .collect();
        let t = truncation_table(value, &c, z);
        assert!(t.decreasing_before_min);
        assert_eq!(t.argmin, 30);
    }
}
