//! Gaussian rules from the Golub–Welsch eigenproblem and adaptive composite
//! integration, with Jacobi end panels for `t^b (1-t)^a` weights.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

/// Nodes and weights on `[-1, 1]` for the weight `(1-x)^alpha (1+x)^beta`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

const NODES: usize = 20;
const MAX_DEPTH: u32 = 48;

fn build_jacobi(n: usize, alpha: f64, beta: f64) -> Rule {
    let ab = alpha + beta;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let diag = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / (s * (s + 2.0))
        };
        m[(k, k)] = diag;
        if k + 1 < n {
            let j = kf + 1.0;
            let s = 2.0 * j + ab;
            let num = 4.0 * j * (j + alpha) * (j + beta) * (j + ab);
            let den = s * s * (s + 1.0) * (s - 1.0);
            let off = (num / den).sqrt();
            m[(k, k + 1)] = off;
            m[(k + 1, k)] = off;
        }
    }
    let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
        - ln_gamma(ab + 2.0))
    .exp();
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

type Key = (usize, u64, u64);

/// Cached Gauss–Jacobi rule.
pub fn jacobi(n: usize, alpha: f64, beta: f64) -> Arc<Rule> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Rule>>>> = OnceLock::new();
    let key = (n, alpha.to_bits(), beta.to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("rule cache").get(&key) {
        return r.clone();
    }
    let rule = Arc::new(build_jacobi(n, alpha, beta));
    cache.lock().expect("rule cache").insert(key, rule.clone());
    rule
}

pub fn legendre(n: usize) -> Arc<Rule> {
    jacobi(n, 0.0, 0.0)
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad {
    pub value: Complex64,
    pub err: f64,
    pub evals: usize,
    pub converged: bool,
}

impl Quad {
    fn join(self, o: Quad) -> Quad {
        Quad {
            value: self.value + o.value,
            err: self.err + o.err,
            evals: self.evals + o.evals,
            converged: self.converged && o.converged,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Panel {
    /// `[0, b]` with `t^beta` absorbed.
    Left,
    /// `[a, 1]` with `(1-t)^alpha` absorbed.
    Right,
    Interior,
}

struct Weighted<'a, F: Fn(f64) -> Complex64> {
    f: &'a F,
    alpha: f64,
    beta: f64,
}

impl<F: Fn(f64) -> Complex64> Weighted<'_, F> {
    fn panel(&self, kind: Panel, a: f64, b: f64) -> Complex64 {
        let (alpha, beta) = (self.alpha, self.beta);
        match kind {
            Panel::Left => {
                let r = jacobi(NODES, 0.0, beta);
                let h = b / 2.0;
                let s: Complex64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(&x, &w)| {
                        let t = h * (1.0 + x);
                        w * (1.0 - t).powf(alpha) * (self.f)(t)
                    })
                    .sum();
                s * h.powf(beta + 1.0)
            }
            Panel::Right => {
                let r = jacobi(NODES, alpha, 0.0);
                let h = (1.0 - a) / 2.0;
                let s: Complex64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(&x, &w)| {
                        let t = 1.0 - h * (1.0 - x);
                        w * t.powf(beta) * (self.f)(t)
                    })
                    .sum();
                s * h.powf(alpha + 1.0)
            }
            Panel::Interior => {
                let r = legendre(NODES);
                let h = (b - a) / 2.0;
                let c = (a + b) / 2.0;
                let s: Complex64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(&x, &w)| {
                        let t = c + h * x;
                        w * t.powf(beta) * (1.0 - t).powf(alpha) * (self.f)(t)
                    })
                    .sum();
                s * h
            }
        }
    }

    fn split(kind: Panel, a: f64, b: f64) -> [(Panel, f64, f64); 2] {
        let m = (a + b) / 2.0;
        match kind {
            Panel::Left => [(Panel::Left, a, m), (Panel::Interior, m, b)],
            Panel::Right => [(Panel::Interior, a, m), (Panel::Right, m, b)],
            Panel::Interior => [(Panel::Interior, a, m), (Panel::Interior, m, b)],
        }
    }

    fn adapt(&self, kind: Panel, a: f64, b: f64, whole: Complex64, tol: f64, depth: u32) -> Quad {
        let [(k1, a1, b1), (k2, a2, b2)] = Self::split(kind, a, b);
        let left = self.panel(k1, a1, b1);
        let right = self.panel(k2, a2, b2);
        let fine = left + right;
        let diff = (fine - whole).norm();
        let evals = 2 * NODES;
        if diff <= tol || depth >= MAX_DEPTH {
            return Quad {
                value: fine,
                err: diff,
                evals,
                converged: diff <= tol,
            };
        }
        let q1 = self.adapt(k1, a1, b1, left, tol / 2.0, depth + 1);
        let q2 = self.adapt(k2, a2, b2, right, tol / 2.0, depth + 1);
        let mut q = q1.join(q2);
        q.evals += evals;
        q
    }
}

/// `int_0^1 t^beta (1-t)^alpha f(t) dt` with `alpha, beta > -1`.
pub fn integrate_weighted<F: Fn(f64) -> Complex64>(f: &F, alpha: f64, beta: f64, tol: f64) -> Quad {
    let w = Weighted { f, alpha, beta };
    let pieces = [
        (Panel::Left, 0.0, 0.25),
        (Panel::Interior, 0.25, 0.75),
        (Panel::Right, 0.75, 1.0),
    ];
    let mut total = Quad {
        value: Complex64::new(0.0, 0.0),
        err: 0.0,
        evals: 0,
        converged: true,
    };
    for (k, a, b) in pieces {
        let whole = w.panel(k, a, b);
        let mut q = w.adapt(k, a, b, whole, tol / 3.0, 0);
        q.evals += NODES;
        total = total.join(q);
    }
    total
}

/// `int_a^b f(t) dt` for smooth `f`, split initially into `pieces` panels.
pub fn integrate<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, pieces: usize, tol: f64) -> Quad {
    let w = Weighted {
        f,
        alpha: 0.0,
        beta: 0.0,
    };
    let pieces = pieces.max(1);
    let h = (b - a) / pieces as f64;
    let mut total = Quad {
        value: Complex64::new(0.0, 0.0),
        err: 0.0,
        evals: 0,
        converged: true,
    };
    for j in 0..pieces {
        let (lo, hi) = (a + j as f64 * h, a + (j + 1) as f64 * h);
        let whole = w.panel(Panel::Interior, lo, hi);
        let mut q = w.adapt(Panel::Interior, lo, hi, whole, tol / pieces as f64, 0);
        q.evals += NODES;
        total = total.join(q);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::gamma;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = legendre(10);
        let s: f64 = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(x, w)| w * x.powi(18))
            .sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_moments() {
        // int_{-1}^1 (1+x)^(-5/6) dx = 2^(1/6) / (1/6)
        let r = jacobi(12, 0.0, -5.0 / 6.0);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 6.0 * 2f64.powf(1.0 / 6.0)).abs() < 1e-12);
    }

    #[test]
    fn beta_function() {
        let f = |_t: f64| Complex64::new(1.0, 0.0);
        let q = integrate_weighted(&f, -1.0 / 6.0, -5.0 / 6.0, 1e-13);
        let exact = gamma(1.0 / 6.0) * gamma(5.0 / 6.0);
        assert!(
            (q.value.re - exact).abs() < 1e-12,
            "{} vs {}",
            q.value.re,
            exact
        );
        assert!(q.converged);
    }

    #[test]
    fn plain_adaptive() {
        let f = |t: f64| Complex64::new((-t).exp(), 0.0);
        let q = integrate(&f, 0.0, 40.0, 4, 1e-13);
        assert!((q.value.re - (1.0 - (-40f64).exp())).abs() < 1e-13);
    }
}
