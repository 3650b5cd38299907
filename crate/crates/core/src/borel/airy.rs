//! Reference Airy function from its Maclaurin series.

use num_complex::Complex64;
use statrs::function::gamma::gamma;

/// `Ai(0)`.
pub fn ai0() -> f64 {
    3f64.powf(-2.0 / 3.0) / gamma(2.0 / 3.0)
}

/// `Ai'(0)`.
pub fn ai0_prime() -> f64 {
    -(3f64.powf(-1.0 / 3.0)) / gamma(1.0 / 3.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryValue {
    pub ai: Complex64,
    pub ai_prime: Complex64,
    pub ai_second: Complex64,
}

/// `Ai = Ai(0) f - |Ai'(0)| h` with `f = sum w^(3k) prod 1/((3j+2)(3j+3))`
/// and `h = sum w^(3k+1) prod 1/((3j+3)(3j+4))`; derivatives termwise.
pub fn airy_oracle(w: Complex64) -> AiryValue {
    let mut f = [Complex64::new(0.0, 0.0); 3];
    let mut h = [Complex64::new(0.0, 0.0); 3];
    let mut a = Complex64::new(1.0, 0.0); // coefficient of w^(3k) in f
    let mut b = Complex64::new(1.0, 0.0); // coefficient of w^(3k+1) in h
    for k in 0..200usize {
        let n = 3 * k;
        let nf = n as f64;
        // powers w^n, w^(n-1), w^(n-2) for f; w^(n+1), w^n, w^(n-1) for h
        let pow = |e: i64| {
            if e < 0 {
                Complex64::new(0.0, 0.0)
            } else {
                w.powi(e as i32)
            }
        };
        let tf = [
            a * pow(n as i64),
            a * nf * pow(n as i64 - 1),
            a * nf * (nf - 1.0) * pow(n as i64 - 2),
        ];
        let m = nf + 1.0;
        let th = [
            b * pow(n as i64 + 1),
            b * m * pow(n as i64),
            b * m * (m - 1.0) * pow(n as i64 - 1),
        ];
        for j in 0..3 {
            f[j] += tf[j];
            h[j] += th[j];
        }
        let small = tf[0].norm() + th[0].norm() + tf[1].norm() + th[1].norm();
        let total = f[0].norm() + h[0].norm() + f[1].norm() + h[1].norm();
        if k > 2 && small <= 1e-18 * total.max(1e-300) {
            break;
        }
        a /= (nf + 2.0) * (nf + 3.0);
        b /= (nf + 3.0) * (nf + 4.0);
    }
    let c1 = ai0();
    let c2 = -ai0_prime();
    AiryValue {
        ai: c1 * f[0] - c2 * h[0],
        ai_prime: c1 * f[1] - c2 * h[1],
        ai_second: c1 * f[2] - c2 * h[2],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        let v = airy_oracle(Complex64::new(0.0, 0.0));
        assert!((v.ai.re - 0.355_028_053_887_817_2).abs() < 1e-15);
        assert!((v.ai_prime.re + 0.258_819_403_792_806_8).abs() < 1e-15);
    }

    #[test]
    fn airy_equation() {
        for w in [
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, 1.5),
            Complex64::new(3.0, -1.0),
        ] {
            let v = airy_oracle(w);
            assert!((v.ai_second - w * v.ai).norm() < 1e-12, "{w}");
        }
        // Ai(1) reference value
        assert!(
            (airy_oracle(Complex64::new(1.0, 0.0)).ai.re - 0.135_292_416_312_881_4).abs() < 1e-15
        );
    }
}
