use proptest::prelude::*;
use resurgentia::exact::{q, qi, PowerSeries, Q};
use resurgentia::hae;

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn series(order: usize, constant: Option<Q>) -> impl Strategy<Value = PowerSeries<Q>> {
    prop::collection::vec(small_q(), order + 1).prop_map(move |mut c| {
        if let Some(k) = &constant {
            c[0] = k.clone();
        }
        PowerSeries::new(order, c)
    })
}

fn triple() -> impl Strategy<Value = (PowerSeries<Q>, PowerSeries<Q>, PowerSeries<Q>)> {
    (1usize..=10).prop_flat_map(|n| (series(n, None), series(n, None), series(n, None)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_log_round_trip((a, b) in (1usize..=12).prop_flat_map(|n| (series(n, Some(qi(1))), series(n, Some(qi(0)))))) {
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a);
        prop_assert_eq!(b.exp().unwrap().log().unwrap(), b);
    }

    #[test]
    fn multiplication_is_commutative_and_associative((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn zero_shift_is_identity(a in (1usize..=10).prop_flat_map(|n| series(n, None))) {
        prop_assert_eq!(a.compose_shift(&PowerSeries::zero(a.order())), a);
    }

    #[test]
    fn derivative_obeys_leibniz((a, b, _) in triple()) {
        let lhs = a.mul(&b).diff_z();
        let rhs = a.diff_z().mul(&b.truncate(lhs.order())).add(&a.truncate(lhs.order()).mul(&b.diff_z()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shifted_g_solves_the_nonlinear_equation(num in -20i64..=20, den in 1i64..=7) {
        let (g, _, _) = hae::gen_g_f(14).unwrap();
        let s = g.series.add(&PowerSeries::constant(q(num, den), 14));
        prop_assert!(hae::ode_residual(&s, hae::Ode::HaeNonlinear).is_zero());
    }
}

/// Airy asymptotic coefficients `Gamma(3n + 1/2) / (54^n n! Gamma(n + 1/2))`,
/// evaluated as the exact product `prod_{j=n}^{3n-1} (j + 1/2)`.
fn airy_u(n: usize) -> Q {
    let mut r = qi(1);
    for j in n..3 * n {
        r *= q(2 * j as i64 + 1, 2);
    }
    for k in 1..=n {
        r /= qi(54 * k as i64);
    }
    r
}

#[test]
fn c_n_match_airy_asymptotic_coefficients() {
    let c = hae::gen_c_coeffs(30);
    for (n, cn) in c.iter().enumerate() {
        assert_eq!(*cn, airy_u(n), "n = {n}");
    }
}

#[test]
fn perturbed_g_is_not_a_solution() {
    let (g, _, _) = hae::gen_g_f(10).unwrap();
    let s = g.series.add(&PowerSeries::monomial(1, qi(1), 10));
    assert!(!hae::ode_residual(&s, hae::Ode::HaeNonlinear).is_zero());
}

#[test]
fn family_powers_match_g1() {
    let n = 16;
    let gs = hae::gen_gn(n, 5).unwrap();
    let (psi, phi) = hae::gen_psi_phi(n).unwrap();
    let e = phi.series.div(&psi.series).unwrap();
    for (m, gm) in gs.iter().enumerate().skip(1) {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        assert_eq!(
            gm.series.scale(&qi(sign * m as i64)),
            e.pow(m as u32),
            "n = {m}"
        );
    }
}

#[test]
fn g_coefficient_ratio_tends_to_one_half() {
    let (g, _, _) = hae::gen_g_f(82).unwrap();
    for (n, r) in hae::ratio_profile(&g.series, 60..=80) {
        let r = resurgentia::exact::q_to_f64(&r);
        assert!((r - 0.5).abs() <= 0.05, "n = {n}: {r}");
    }
}
