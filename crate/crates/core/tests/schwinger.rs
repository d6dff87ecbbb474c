use num_complex::Complex64;

use qps::schwinger::{build_pair, fourier_matrix, kronecker_mod, LabelConvention};
use qps::DenseOperator;

#[test]
fn clock_projectors_are_orthogonal_idempotents() {
    for n in [2, 3, 5, 9] {
        let pair = build_pair(n).unwrap();
        let ps: Vec<_> = (0..n as i64)
            .map(|k| pair.projector_v(k).unwrap())
            .collect();
        for (k, pk) in ps.iter().enumerate() {
            for (l, pl) in ps.iter().enumerate() {
                let expected = if k == l {
                    pk.clone()
                } else {
                    DenseOperator::zeros(n)
                };
                assert!(
                    (pk * pl).max_abs_diff(&expected) <= 1e-12,
                    "N={n} k={k} l={l}"
                );
            }
        }
    }
}

#[test]
fn kronecker_delta_mod_n() {
    for n in 2..=25usize {
        for k in 0..n as i64 {
            for l in 0..n as i64 {
                let expected = if k == l { 1.0 } else { 0.0 };
                assert!((kronecker_mod(n, k, l) - Complex64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn fourier_rows_and_columns_orthonormal() {
    for n in 2..=64 {
        let f = fourier_matrix(n).unwrap();
        assert!(f.unitarity_defect() <= 1e-12, "N={n}");
        assert!(f.adjoint().unitarity_defect() <= 1e-12, "N={n}");
    }
}

#[test]
fn fourier_conjugation_maps_shift_to_clock() {
    for n in 2..=16 {
        let pair = build_pair(n).unwrap();
        let f = fourier_matrix(n).unwrap();
        let conj = &(&f * &pair.u().to_dense()) * &f.adjoint();
        assert!(conj.max_abs_diff(&pair.v().to_dense()) <= 1e-10, "N={n}");
        // The opposite order lands on V†.
        let back = &(&f.adjoint() * &pair.u().to_dense()) * &f;
        assert!(
            back.max_abs_diff(&pair.v().to_dense().adjoint()) <= 1e-10,
            "N={n}"
        );
    }
}

#[test]
fn label_maps_are_inverse_bijections() {
    for n in (3..=25).step_by(2) {
        let sym = LabelConvention::Symmetric;
        let labels = sym.labels(n).unwrap();
        let mut seen = vec![false; n];
        for (i, &lab) in labels.iter().enumerate() {
            let back = sym.to_index(lab, n).unwrap();
            assert_eq!(back, i);
            assert!(!std::mem::replace(&mut seen[back], true));
            assert_eq!(LabelConvention::ZeroBased.to_index(i as i64, n).unwrap(), i);
            assert_eq!(lab.rem_euclid(n as i64) as usize, i);
        }
    }
}
