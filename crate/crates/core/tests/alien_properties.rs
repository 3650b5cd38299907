use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use resurgentia::alien::checks::{flow_group_residual, left_flow_ode_residual, Direction};
use resurgentia::alien::fuzz::{fuzz_check, random_element};
use resurgentia::alien::poly::Exps;
use resurgentia::alien::{
    expand_to_series, te_apply, AlienOp, Caps, Frame, Lin, Mono, Poly, TransElement,
};
use resurgentia::exact::{q, Gauss, PowerSeries};
use resurgentia::hae;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leibniz_and_commutation_on_fuzzed_elements(seed in any::<u64>()) {
        let r = fuzz_check(seed, 5).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn deltaplus_relations(seed in any::<u64>()) {
        let x = random_element(&mut ChaCha8Rng::seed_from_u64(seed), true);
        let d2 = |y: &TransElement| te_apply(AlienOp::Delta(2), y).unwrap();
        prop_assert_eq!(te_apply(AlienOp::DeltaPlus(2), &x).unwrap(), d2(&x));
        let half = d2(&d2(&x)).scale_q(&q(1, 2));
        prop_assert_eq!(te_apply(AlienOp::DeltaPlus(4), &x).unwrap(), half);
    }
}

#[test]
fn flows_form_one_parameter_groups() {
    assert!(flow_group_residual(Direction::Right, 4, 4)
        .unwrap()
        .is_zero());
    assert!(flow_group_residual(Direction::Left, 4, 4)
        .unwrap()
        .is_zero());
}

#[test]
fn left_flow_solves_its_parameter_equations() {
    let (a, b) = left_flow_ode_residual(6);
    assert!(a.is_zero() && b.is_zero());
}

#[test]
fn delta_two_of_g_expands_to_minus_i_e() {
    let order = 12;
    let g = TransElement::mono(Mono::lin(Lin::G), Poly::one(), Caps::EXACT, Frame::Direct);
    let dg = te_apply(AlienOp::Delta(2), &g).unwrap();
    let ex = expand_to_series(&dg, order).unwrap();
    let key: (Exps, i32) = ([0; 4], 0);
    let (psi, phi) = hae::gen_psi_phi(order).unwrap();
    let want: PowerSeries<Gauss> = phi
        .series
        .div(&psi.series)
        .unwrap()
        .map(|c| Gauss::new(q(0, 1), -c.clone()));
    assert_eq!(ex.len(), 1);
    assert_eq!(ex[&key], want);
}
