use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qps::basis::{
    basis_change_matrix, condition_number, s2, s2_exchange_image, t_mod, wigner_map, BasisFamily,
    BasisKind,
};
use qps::schwinger::fourier_matrix;
use qps::{hs_inner, DenseOperator, SchwingerPair};

fn random_operator(rng: &mut ChaCha8Rng, n: usize) -> DenseOperator {
    DenseOperator::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> DenseOperator {
    let a = random_operator(rng, n);
    (&a + &a.adjoint()).scale(Complex64::new(0.5, 0.0))
}

#[test]
fn orthonormal_families() {
    for n in [2, 3, 4, 5, 7, 8, 9] {
        for kind in [BasisKind::S1, BasisKind::S2, BasisKind::TMod] {
            let gram = BasisFamily::new(kind, n).unwrap().gram_matrix();
            for i in 0..n * n {
                for j in 0..n * n {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    assert!((gram[(i, j)] - Complex64::new(delta, 0.0)).norm() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn every_family_is_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in [2, 3, 5, 8] {
        for kind in BasisKind::ALL {
            let fam = BasisFamily::cached(kind, n).unwrap();
            for _ in 0..20 {
                let o = random_operator(&mut rng, n);
                let back = fam.reconstruct(&fam.decompose(&o).unwrap()).unwrap();
                assert!(back.max_abs_diff(&o) < 1e-10, "{kind:?} N={n}");
            }
        }
    }
}

#[test]
fn hermitian_round_trip_at_five() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let o = random_hermitian(&mut rng, 5);
    for kind in BasisKind::ALL {
        let fam = BasisFamily::cached(kind, 5).unwrap();
        assert!(
            fam.reconstruct(&fam.decompose(&o).unwrap())
                .unwrap()
                .max_abs_diff(&o)
                < 1e-10
        );
    }
}

#[test]
fn exchange_symmetry_of_s2() {
    for n in [2usize, 3, 5, 6] {
        let pair = SchwingerPair::new(n).unwrap();
        let f = fourier_matrix(n).unwrap();
        for m in 0..n as i64 {
            for k in 0..n as i64 {
                let direct = s2(n, m, k).unwrap();
                assert!(s2_exchange_image(&pair, m, k).max_abs_diff(&direct) <= 1e-10);
                // The same substitution realised as conjugation by the Fourier matrix.
                let conj = &(&f * &direct) * &f.adjoint();
                assert!(conj.max_abs_diff(&s2(n, -k, m).unwrap()) <= 1e-10);
            }
        }
    }
}

#[test]
fn t_mod_is_periodic_densely() {
    for n in [3usize, 5, 7] {
        let ni = n as i64;
        for j in 0..ni {
            for l in 0..ni {
                let base = t_mod(n, j, l).unwrap();
                for (a, b) in [(-2, 1), (1, -1), (2, 2), (-1, 0)] {
                    assert_eq!(t_mod(n, j + a * ni, l + b * ni).unwrap(), base);
                }
            }
        }
    }
}

#[test]
fn s1_to_g_basis_change_is_well_conditioned() {
    for n in 2..=9 {
        let s1 = BasisFamily::cached(BasisKind::S1, n).unwrap();
        let g = BasisFamily::cached(BasisKind::GFourier, n).unwrap();
        let cond = condition_number(&basis_change_matrix(&s1, &g).unwrap());
        assert!(cond < 1e6, "N={n}: {cond}");
        // G(m,n) is √N times a unitary image of the S2 family.
        assert!((cond - 1.0).abs() < 1e-10, "N={n}: {cond}");
    }
}

#[test]
fn g_gram_is_scaled_identity() {
    for n in 2..=6 {
        let gram = BasisFamily::cached(BasisKind::GFourier, n)
            .unwrap()
            .gram_matrix();
        for i in 0..n * n {
            for j in 0..n * n {
                let expected = if i == j { n as f64 } else { 0.0 };
                assert!((gram[(i, j)] - Complex64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn wigner_sums_to_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [2, 3, 4, 5, 7] {
        for _ in 0..5 {
            let o = random_operator(&mut rng, n);
            let w = wigner_map(&o, n).unwrap();
            assert!((w.total - o.trace()).norm() < 1e-12);
            assert_eq!(w.trace, o.trace());
        }
    }
}

#[test]
fn wigner_realness_follows_the_kernel_probe() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [2, 3, 5] {
        let fam = BasisFamily::cached(BasisKind::GFourier, n).unwrap();
        let o = random_hermitian(&mut rng, n);
        let w = wigner_map(&o, n).unwrap();
        assert_eq!(w.real, fam.kernel_hermitian());
        if w.real {
            assert!(w.values.iter().all(|z| z.im.abs() < 1e-12));
        }
        for g in fam.elements() {
            let expected = fam.kernel_hermitian();
            assert!(!expected || g.is_hermitian(1e-10));
        }
    }
    // The kernel is Hermitian for the qubit and not for N = 3.
    assert!(BasisFamily::cached(BasisKind::GFourier, 2)
        .unwrap()
        .kernel_hermitian());
    assert!(!BasisFamily::cached(BasisKind::GFourier, 3)
        .unwrap()
        .kernel_hermitian());
}

#[test]
fn qubit_wigner_of_ground_state() {
    let p0 = SchwingerPair::new(2).unwrap().projector_v(0).unwrap();
    let w = wigner_map(&p0, 2).unwrap();
    // W(m,n) = (1/2)·G(m,n)_{00} = (1 + (−1)^n)/4
    for m in 0..2 {
        assert!((w.get(m, 0) - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        assert!(w.get(m, 1).norm() < 1e-14);
    }
    assert!(hs_inner(&p0, &p0).unwrap().re - 1.0 < 1e-15);
}
