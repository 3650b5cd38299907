use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use resurgentia::borel::family::sum_psi_prime;
use resurgentia::borel::singular::bhat_coeffs;
use resurgentia::borel::{
    eval_bhat, g_pm, laplace_ray, sum_family, Branch, Family, Interval, Lateral, LogPoint,
    SumConfig,
};
use resurgentia::exact::{q_to_f64, PowerSeries, Q};
use resurgentia::hae;
use resurgentia::large_radius::{gen_r, r_value};
use statrs::function::gamma::gamma_lr;

fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn laplace_value_is_independent_of_the_ray(t1 in 0.15f64..1.3, t2 in 0.15f64..1.3, arg in -0.1f64..0.1) {
        let z = Complex64::from_polar(4.0, arg);
        let f = |s| eval_bhat(s, Branch::Minus, 1e-14);
        let a = laplace_ray(f, z, t1, 2.0, 1e-13).unwrap();
        let b = laplace_ray(f, z, t2, 2.0, 1e-13).unwrap();
        prop_assert!((a.value - b.value).norm() <= 1e-11 + a.err + b.err, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn lateral_sums_reflect(
        r in 3.0f64..6.0,
        arg in -0.4f64..0.4,
        s1 in (-1.0f64..1.0, -1.0f64..1.0),
        s2 in (-1.0f64..1.0, -1.0f64..1.0),
    ) {
        let cfg = SumConfig::default();
        let z = LogPoint::new(r, arg);
        let (s1, s2) = (cplx(s1.0, s1.1), cplx(s2.0, s2.1));
        let minus = g_pm(Lateral::Minus, &z, s1, s2, &cfg).unwrap();
        let plus = g_pm(Lateral::Plus, &z.conj(), s1.conj(), s2.conj(), &cfg).unwrap();
        prop_assert!((minus.value.conj() - plus.value).norm() <= 1e-10, "{} vs {}", minus.value, plus.value);
    }

    #[test]
    fn r_closed_form_matches_its_series(gs in 0.01f64..0.08, ga in -0.5f64..0.5, u in (0.5f64..1.5, -0.5f64..0.5)) {
        let gs = LogPoint::new(gs, ga);
        let u = cplx(u.0, u.1);
        let series = gen_r(14).eval(gs.value().powi(2), u);
        prop_assert!((series - r_value(&gs, u).unwrap()).norm() < 1e-12);
    }
}

/// `S(psi(z) psi(-z))` from the Laplace transform of the Maclaurin series of
/// its Borel transform, cut at `|zeta| = t`: each monomial integrates to a
/// regularized incomplete gamma function.
fn product_sum_by_maclaurin(z: f64, t: f64, terms: usize) -> f64 {
    let (psi, phi) = hae::gen_psi_phi(terms).unwrap();
    let prod: PowerSeries<Q> = psi.series.mul(&phi.series);
    let mut total = q_to_f64(&prod.coeff(0));
    for n in 1..=terms {
        total += q_to_f64(&prod.coeff(n)) * z.powi(-(n as i32)) * gamma_lr(n as f64, z * t);
    }
    total
}

#[test]
fn sum_is_multiplicative_at_large_z() {
    let cfg = SumConfig::default();
    let z = LogPoint::new(30.0, 0.0);
    let psi = sum_family(Family::Psi, &z, &Interval::I_PLUS, &cfg).unwrap();
    let phi = sum_family(Family::Phi, &z, &Interval::I_PI, &cfg).unwrap();
    let direct = product_sum_by_maclaurin(30.0, 1.5, 90);
    assert!(
        (psi.value * phi.value - direct).norm() < 1e-12,
        "{} vs {direct}",
        psi.value * phi.value
    );
}

#[test]
fn sum_commutes_with_derivative() {
    let cfg = SumConfig::default();
    let (x, h) = (5.0, 1e-3);
    let g = |d: f64| {
        sum_family(
            Family::G,
            &LogPoint::new(x + d, 0.0),
            &Interval::I_PLUS,
            &cfg,
        )
        .unwrap()
        .value
    };
    let fd = (-g(2.0 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2.0 * h)) / (12.0 * h);
    let z = LogPoint::new(x, 0.0);
    let dpsi = sum_psi_prime(&z, &Interval::I_PLUS, &cfg).unwrap().value;
    let psi = sum_family(Family::Psi, &z, &Interval::I_PLUS, &cfg)
        .unwrap()
        .value;
    assert!((fd - dpsi / psi).norm() < 1e-9, "{fd} vs {}", dpsi / psi);
}

#[test]
fn kernel_coefficients_see_radius_two() {
    let a = bhat_coeffs(90);
    let r = (q_to_f64(&a[80]) / q_to_f64(&a[81])).abs();
    assert!((r - 2.0).abs() < 0.1, "{r}");
}

#[test]
fn airy_identity_on_a_finer_grid() {
    let cfg = SumConfig::default();
    for w in [0.5f64, 1.5, 3.0, 3.5] {
        let z = 2.0 / 3.0 * w.powf(1.5);
        let s = sum_family(Family::Phi, &LogPoint::new(z, 0.0), &Interval::I_PI, &cfg)
            .unwrap()
            .value;
        let ai = resurgentia::borel::airy_oracle(cplx(w, 0.0)).ai;
        let rhs = 2.0 * PI.sqrt() * w.powf(0.25) * z.exp() * ai;
        assert!(((s - rhs) / s).norm() < 1e-8, "w = {w}");
    }
}
