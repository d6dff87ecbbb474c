use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qps::perm::{pp_adjoint, pp_compose, pp_to_dense};
use qps::phase::{phase_mul, phase_promote};
use qps::schwinger::build_pair;
use qps::{hs_inner, DenseOperator, PhasedPermutation, RootPhase};

#[test]
fn weyl_exchange_exact_up_to_25() {
    for n in 2..=25usize {
        let pair = build_pair(n).unwrap();
        for k in 0..n as i64 {
            for l in 0..n as i64 {
                let vu = pp_compose(&pair.v().pow(l), &pair.u().pow(k)).unwrap();
                let uv = pp_compose(&pair.u().pow(k), &pair.v().pow(l)).unwrap();
                // ω^{kl} at order 2N
                let shifted: Vec<i64> = uv
                    .exponents()
                    .iter()
                    .map(|&e| e as i64 + 2 * k * l)
                    .collect();
                let expected =
                    PhasedPermutation::new(uv.perm().to_vec(), shifted, pair.order()).unwrap();
                assert_eq!(vu, expected, "N={n} k={k} l={l}");
            }
        }
        assert!(pair.u().pow(n as i64).is_identity());
        assert!(pair.v().pow(n as i64).is_identity());
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize) -> PhasedPermutation {
    let pair = build_pair(n).unwrap();
    pair.monomial(rng.gen_range(0..n as i64), rng.gen_range(0..n as i64))
        .scale_phase(RootPhase::new(pair.order(), rng.gen_range(0..pair.order() as i64)).unwrap())
        .unwrap()
}

#[test]
fn dense_image_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3, 5, 8, 15] {
        for _ in 0..100 {
            let a = random_monomial(&mut rng, n);
            let b = random_monomial(&mut rng, n);
            let lhs = pp_to_dense(&pp_compose(&a, &b).unwrap());
            let rhs = &pp_to_dense(&a) * &pp_to_dense(&b);
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }
    }
}

#[test]
fn identity_and_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_monomial(&mut rng, 4);
    let id = PhasedPermutation::identity(4, 8);
    assert_eq!(pp_compose(&id, &a).unwrap(), a);
    let b = random_monomial(&mut rng, 6);
    assert_eq!(pp_adjoint(&pp_adjoint(&b)), b);
    assert!(pp_compose(&b, &pp_adjoint(&b)).unwrap().is_identity());
}

fn complex_matrix(n: usize) -> impl Strategy<Value = DenseOperator> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), n * n).prop_map(move |v| {
        DenseOperator::new(
            n,
            v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn hs_inner_is_hermitian_form(a in complex_matrix(4), b in complex_matrix(4)) {
        let ab = hs_inner(&a, &b).unwrap();
        let ba = hs_inner(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() <= 1e-12 * (1.0 + ab.norm()));
        let aa = hs_inner(&a, &a).unwrap();
        prop_assert!(aa.im.abs() <= 1e-12 && aa.re >= 0.0);
    }

    #[test]
    fn phase_arithmetic_matches_complex(order in 1u64..60, x in -200i64..200, y in -200i64..200, scale in 1u64..5) {
        let a = RootPhase::new(order, x).unwrap();
        let b = RootPhase::new(order, y).unwrap();
        let prod = phase_mul(a, b).unwrap();
        prop_assert!(prod.exponent() < order);
        prop_assert!((prod.value() - a.value() * b.value()).norm() < 1e-12);
        let promoted = phase_promote(a, order * scale).unwrap();
        prop_assert!((promoted.value() - a.value()).norm() < 1e-12);
    }
}
