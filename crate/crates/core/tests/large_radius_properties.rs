use num_complex::Complex64;
use proptest::prelude::*;
use resurgentia::borel::Lateral;
use resurgentia::borel::{LogPoint, Side, SumConfig};
use resurgentia::exact::{q, qi, Laurent};
use resurgentia::large_radius::{gen_h0, gen_hn, lr_connection_check, lr_sum, Grading};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn right_connection_at_random_points(
        gs in 0.25f64..0.45,
        u in 0.8f64..1.2,
        s1 in -1.0f64..1.0,
        s2 in (-1.0f64..1.0, -1.0f64..1.0),
    ) {
        let cfg = SumConfig::default();
        let r = lr_connection_check(
            Side::Right,
            &LogPoint::new(gs, 0.0),
            Complex64::new(u, 0.0),
            Complex64::new(s1, 0.0),
            Complex64::new(s2.0, s2.1),
            &cfg,
        )
        .unwrap();
        prop_assert!(r.residual <= 1e-8, "{:?}", r);
    }

    #[test]
    fn sigma1_enters_additively(s1 in -2.0f64..2.0) {
        let cfg = SumConfig::default();
        let gs = LogPoint::new(0.3, 0.0);
        let u = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let a = lr_sum(Lateral::Plus, &gs, u, Complex64::new(s1, 0.0), zero, &cfg).unwrap();
        let b = lr_sum(Lateral::Plus, &gs, u, zero, zero, &cfg).unwrap();
        prop_assert!((a.value - b.value - s1).norm() < 1e-13);
    }
}

#[test]
fn h0_higher_genus_terms_vanish_at_u_zero() {
    let h = gen_h0(8).unwrap();
    assert_eq!(h.grading, Grading::Gs2);
    for g in 1..=8 {
        let c = h.coeff(g);
        assert!(c.is_polynomial(), "g = {}", g + 1);
        assert_eq!(c.coeff(0), qi(0), "g = {}", g + 1);
    }
}

#[test]
fn pol_degrees_and_leading_terms() {
    for n in 1..=3u32 {
        let h = gen_hn(n, 4).unwrap();
        assert!(h.degrees_ok());
        // the g = 1 polynomial starts at 1 for every n
        assert_eq!(h.pols[0].coeff(0), qi(1), "n = {n}");
    }
    let h1 = gen_hn(1, 1).unwrap();
    assert_eq!(
        h1.pols[0],
        Laurent::monomial(q(5, 12), 2) + Laurent::constant(qi(1))
    );
}
