//! The clock/shift pair on an `N`-level space, its spectral projectors and
//! the finite Fourier transform between the two eigenbases.
//!
//! Everything is written in the clock eigenbasis `|v_0⟩ … |v_{N−1}⟩`:
//! `V = Σ ω^l |v_l⟩⟨v_l|` and `U = Σ |v_{l+1}⟩⟨v_l|` with `ω = exp(2πi/N)`.
//! Phases are held at order `2N` so the half-angle phases of the symmetrized
//! basis share the representation.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dense::DenseOperator;
use crate::error::{QpsError, Result};
use crate::perm::PhasedPermutation;
use crate::phase::{reduce, root_of_unity, root_table};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchwingerPair {
    dim: usize,
    u: PhasedPermutation,
    v: PhasedPermutation,
}

impl SchwingerPair {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(QpsError::DimensionTooSmall { min: 2, got: n });
        }
        let order = 2 * n as u64;
        let u =
            PhasedPermutation::from_raw((0..n).map(|l| (l + 1) % n).collect(), vec![0; n], order);
        let v = PhasedPermutation::from_raw(
            (0..n).collect(),
            (0..n as u64).map(|l| 2 * l).collect(),
            order,
        );
        Ok(Self { dim: n, u, v })
    }

    /// Assembles a pair from arbitrary operators without checking the
    /// clock/shift invariants. Useful for negative controls of
    /// [`verify_clifford`].
    pub fn from_parts(u: PhasedPermutation, v: PhasedPermutation) -> Result<Self> {
        if u.dim() != v.dim() {
            return Err(QpsError::DimensionMismatch {
                left: u.dim(),
                right: v.dim(),
            });
        }
        if u.order() != v.order() {
            return Err(QpsError::OrderMismatch {
                left: u.order(),
                right: v.order(),
            });
        }
        Ok(Self { dim: u.dim(), u, v })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Order of the roots of unity carried by `u` and `v` (`2N` for a built pair).
    pub fn order(&self) -> u64 {
        self.u.order()
    }

    pub fn u(&self) -> &PhasedPermutation {
        &self.u
    }

    pub fn v(&self) -> &PhasedPermutation {
        &self.v
    }

    /// `U^m V^n` for any integers; exactly periodic in both labels.
    pub fn monomial(&self, m: i64, n: i64) -> PhasedPermutation {
        let dim = self.dim;
        let order = self.order();
        let shift = reduce(m as i128, dim as u64) as usize;
        let step = reduce(n as i128, dim as u64);
        // V^n contributes ω^{n·l} = ζ_{2N}^{2nl} on column l, then U^m moves l to l+m.
        let perm = (0..dim).map(|l| (l + shift) % dim).collect();
        let exponents = (0..dim as u64).map(|l| (2 * step * l) % order).collect();
        PhasedPermutation::from_raw(perm, exponents, order)
    }

    /// `(1/N) Σ_j V^j v_k^{−j}`: the projector onto the clock eigenstate `|v_k⟩`.
    pub fn projector_v(&self, k: i64) -> Result<DenseOperator> {
        let k = self.check_label(k)?;
        let n = self.dim as i64;
        let mut out = DenseOperator::zeros(self.dim);
        for j in 0..n {
            let term = self.monomial(0, j).scale_phase(self.omega_pow(-j * k))?;
            out.axpy(Complex64::new(1.0 / n as f64, 0.0), &term.to_dense());
        }
        Ok(out)
    }

    /// `(1/N) Σ_j U^{−j} u_k^{j}`: the projector onto the shift eigenstate with eigenvalue `ω^k`.
    pub fn projector_u(&self, k: i64) -> Result<DenseOperator> {
        let k = self.check_label(k)?;
        let n = self.dim as i64;
        let mut out = DenseOperator::zeros(self.dim);
        for j in 0..n {
            let term = self.monomial(-j, 0).scale_phase(self.omega_pow(j * k))?;
            out.axpy(Complex64::new(1.0 / n as f64, 0.0), &term.to_dense());
        }
        Ok(out)
    }

    /// `ω^e` at the pair's phase order.
    fn omega_pow(&self, e: i64) -> crate::phase::RootPhase {
        crate::phase::RootPhase::new(self.order(), 2 * e).expect("order is positive")
    }

    fn check_label(&self, k: i64) -> Result<i64> {
        if k < 0 || k >= self.dim as i64 {
            return Err(QpsError::IndexOutOfRange {
                index: k,
                dim: self.dim,
            });
        }
        Ok(k)
    }
}

pub fn build_pair(n: usize) -> Result<SchwingerPair> {
    SchwingerPair::new(n)
}

/// The matrix of overlaps `⟨u_k|v_l⟩ = exp(2πikl/N)/√N`.
///
/// With this matrix `F`, conjugation `F · U · F†` gives `V` and
/// `F† · U · F` gives `V†`.
pub fn fourier_matrix(n: usize) -> Result<DenseOperator> {
    if n < 2 {
        return Err(QpsError::DimensionTooSmall { min: 2, got: n });
    }
    let table = root_table(n as u64);
    let norm = 1.0 / (n as f64).sqrt();
    Ok(DenseOperator::from_fn(n, |k, l| table[(k * l) % n] * norm))
}

/// `(1/N) Σ_j v_k^{−j} v_l^{j}`, the Kronecker delta modulo `N` evaluated in complex arithmetic.
pub fn kronecker_mod(n: usize, k: i64, l: i64) -> Complex64 {
    let order = n as u64;
    (0..n as i64)
        .map(|j| root_of_unity(order, reduce((j * (l - k)) as i128, order)))
        .sum::<Complex64>()
        / n as f64
}

/// How integer labels `0..N` are presented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelConvention {
    #[default]
    ZeroBased,
    /// `−(N−1)/2 … (N−1)/2`; odd `N` only.
    Symmetric,
}

impl LabelConvention {
    pub fn validate(self, n: usize) -> Result<()> {
        match self {
            LabelConvention::Symmetric if n.is_multiple_of(2) => {
                Err(QpsError::SymmetricLabelsNeedOdd(n))
            }
            _ => Ok(()),
        }
    }

    /// Labels in index order `0..N`.
    pub fn labels(self, n: usize) -> Result<Vec<i64>> {
        self.validate(n)?;
        Ok((0..n).map(|i| self.from_index(i, n)).collect())
    }

    pub fn from_index(self, index: usize, n: usize) -> i64 {
        let i = (index % n) as i64;
        match self {
            LabelConvention::ZeroBased => i,
            LabelConvention::Symmetric => {
                let half = (n as i64 - 1) / 2;
                if i > half {
                    i - n as i64
                } else {
                    i
                }
            }
        }
    }

    pub fn to_index(self, label: i64, n: usize) -> Result<usize> {
        self.validate(n)?;
        let in_range = match self {
            LabelConvention::ZeroBased => (0..n as i64).contains(&label),
            LabelConvention::Symmetric => {
                let half = (n as i64 - 1) / 2;
                (-half..=half).contains(&label)
            }
        };
        if !in_range {
            return Err(QpsError::IndexOutOfRange {
                index: label,
                dim: n,
            });
        }
        Ok(label.rem_euclid(n as i64) as usize)
    }
}

/// One failed instance of the clock/shift exchange relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordViolation {
    /// Which relation: `"weyl"`, `"shift-order"` or `"clock-order"`.
    pub relation: &'static str,
    pub k: usize,
    pub l: usize,
    /// First offending column.
    pub column: usize,
    /// Circular exponent distance at order `2N`; `None` when the permutations differ.
    pub exponent_mismatch: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordReport {
    pub dim: usize,
    /// Exchange relations `V^l U^k = ω^{kl} U^k V^l` checked (`N²`).
    pub relation_instances: usize,
    /// Period checks `U^N = I`, `V^N = I`.
    pub order_checks: usize,
    pub max_exponent_mismatch: u64,
    pub violation_count: usize,
    /// The first ten violations in `(k, l)` row-major order.
    pub violations: Vec<CliffordViolation>,
}

impl CliffordReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const REPORTED_VIOLATIONS: usize = 10;

fn compare_exact(
    lhs: &PhasedPermutation,
    rhs: &PhasedPermutation,
    relation: &'static str,
    k: usize,
    l: usize,
) -> Option<CliffordViolation> {
    let order = lhs.order();
    if lhs.perm() != rhs.perm() {
        let column = (0..lhs.dim())
            .find(|&j| lhs.perm()[j] != rhs.perm()[j])
            .unwrap_or(0);
        return Some(CliffordViolation {
            relation,
            k,
            l,
            column,
            exponent_mismatch: None,
        });
    }
    let (column, mismatch) = lhs
        .exponents()
        .iter()
        .zip(rhs.exponents())
        .map(|(&a, &b)| {
            let d = (order + a - b) % order;
            d.min(order - d)
        })
        .enumerate()
        .max_by_key(|&(j, d)| (d, std::cmp::Reverse(j)))?;
    (mismatch > 0).then_some(CliffordViolation {
        relation,
        k,
        l,
        column,
        exponent_mismatch: Some(mismatch),
    })
}

/// Checks `V^l U^k = ω^{kl} U^k V^l` for all `0 ≤ k, l < N` and
/// `U^N = V^N = I`, using the pair's own operators in exact arithmetic.
pub fn verify_clifford(pair: &SchwingerPair) -> CliffordReport {
    let n = pair.dim();
    let order = pair.order();
    let omega_unit = order / n as u64;
    let u_pows: Vec<_> = (0..n as i64).map(|k| pair.u().pow(k)).collect();
    let v_pows: Vec<_> = (0..n as i64).map(|l| pair.v().pow(l)).collect();

    // Row-major over (k, l); collected in order so the report is deterministic.
    let mut violations: Vec<CliffordViolation> = (0..n * n)
        .into_par_iter()
        .filter_map(|idx| {
            let (k, l) = (idx / n, idx % n);
            let lhs = v_pows[l].compose(&u_pows[k]).expect("same shape");
            let weyl = crate::phase::RootPhase::new(
                order,
                (omega_unit * ((k * l) as u64 % n as u64)) as i64,
            )
            .expect("order is positive");
            let rhs = u_pows[k]
                .compose(&v_pows[l])
                .and_then(|p| p.scale_phase(weyl))
                .expect("same shape");
            compare_exact(&lhs, &rhs, "weyl", k, l)
        })
        .collect();

    let identity = PhasedPermutation::identity(n, order);
    violations.extend(compare_exact(
        &pair.u().pow(n as i64),
        &identity,
        "shift-order",
        n,
        0,
    ));
    violations.extend(compare_exact(
        &pair.v().pow(n as i64),
        &identity,
        "clock-order",
        0,
        n,
    ));

    let max_exponent_mismatch = violations
        .iter()
        .map(|v| v.exponent_mismatch.unwrap_or(order / 2))
        .max()
        .unwrap_or(0);
    let violation_count = violations.len();
    violations.truncate(REPORTED_VIOLATIONS);
    CliffordReport {
        dim: n,
        relation_instances: n * n,
        order_checks: 2,
        max_exponent_mismatch,
        violation_count,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pair_at_two_is_pauli() {
        let p = build_pair(2).unwrap();
        let u = p.u().to_dense();
        let v = p.v().to_dense();
        assert_eq!(
            u.entries(),
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]
        );
        assert_eq!(
            v.entries(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]
        );
    }

    #[test]
    fn clock_at_three() {
        let v = build_pair(3).unwrap().v().to_dense();
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let expected = DenseOperator::diagonal(&[c(1.0, 0.0), w, w * w]);
        assert!(v.approx_eq(&expected, 1e-15));
        assert_eq!(build_pair(3).unwrap().v().exponents(), &[0, 2, 4]);
    }

    #[test]
    fn degenerate_dimension_rejected() {
        assert_eq!(
            build_pair(1),
            Err(QpsError::DimensionTooSmall { min: 2, got: 1 })
        );
    }

    #[test]
    fn monomial_examples() {
        assert!(build_pair(5).unwrap().monomial(0, 0).is_identity());
        let p3 = build_pair(3).unwrap();
        let uv = p3.monomial(1, 1);
        assert_eq!(uv.perm(), &[1, 2, 0]);
        assert_eq!(uv.exponents(), &[0, 2, 4]);
        assert_eq!(uv.order(), 6);
        assert_eq!(uv, p3.u().compose(p3.v()).unwrap());
        assert!(build_pair(7).unwrap().monomial(7, 0).is_identity());
        let p5 = build_pair(5).unwrap();
        assert_eq!(
            p5.monomial(-2, 3),
            p5.u().pow(-2).compose(&p5.v().pow(3)).unwrap()
        );
    }

    #[test]
    fn clock_projectors() {
        let p3 = build_pair(3).unwrap();
        let expected = DenseOperator::diagonal(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(p3.projector_v(1).unwrap().approx_eq(&expected, 1e-15));
        let p2 = build_pair(2).unwrap();
        let expected = DenseOperator::diagonal(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(p2.projector_v(0).unwrap().approx_eq(&expected, 1e-15));
        assert!(p3.projector_v(3).is_err());
        assert!(p3.projector_v(-1).is_err());

        let p5 = build_pair(5).unwrap();
        let mut sum = DenseOperator::zeros(5);
        for k in 0..5 {
            sum = &sum + &p5.projector_v(k).unwrap();
        }
        assert!(sum.approx_eq(&DenseOperator::identity(5), 1e-14));
    }

    #[test]
    fn shift_projectors_at_two() {
        let p2 = build_pair(2).unwrap();
        let x = p2.u().to_dense();
        let id = DenseOperator::identity(2);
        let plus = (&id + &x).scale(c(0.5, 0.0));
        let minus = (&id - &x).scale(c(0.5, 0.0));
        assert!(p2.projector_u(0).unwrap().approx_eq(&plus, 1e-15));
        assert!(p2.projector_u(1).unwrap().approx_eq(&minus, 1e-15));
        let p7 = build_pair(7).unwrap();
        for k in 0..7 {
            assert!((p7.projector_u(k).unwrap().trace() - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn shift_projector_is_eigenprojector() {
        let p = build_pair(5).unwrap();
        let u = p.u().to_dense();
        for k in 0..5 {
            let proj = p.projector_u(k).unwrap();
            let w = root_of_unity(5, k as u64);
            assert!((&u * &proj).approx_eq(&proj.scale(w), 1e-14));
        }
    }

    #[test]
    fn fourier_at_two() {
        let f = fourier_matrix(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(f.approx_eq(
            &DenseOperator::new(2, vec![c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]).unwrap(),
            1e-15
        ));
        assert!(fourier_matrix(16).unwrap().unitarity_defect() < 1e-12);
    }

    #[test]
    fn fourier_conjugation_direction() {
        // Brute-force oracle at N = 3: build F, U, V entry by entry and
        // multiply out both conjugation orders.
        let n = 3;
        let w =
            |e: usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / n as f64);
        let f = DenseOperator::from_fn(n, |k, l| w(k * l % n) / (n as f64).sqrt());
        let u = DenseOperator::from_fn(n, |r, col| {
            if r == (col + 1) % n {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let v = DenseOperator::from_fn(n, |r, col| if r == col { w(r) } else { c(0.0, 0.0) });
        let fuf = &(&f * &u) * &f.adjoint();
        let fdu = &(&f.adjoint() * &u) * &f;
        assert!(fuf.approx_eq(&v, 1e-12));
        assert!(fdu.approx_eq(&v.adjoint(), 1e-12));
        assert!(!fdu.approx_eq(&v, 1e-3));

        let p = build_pair(n).unwrap();
        let fm = fourier_matrix(n).unwrap();
        assert!(fm.approx_eq(&f, 1e-15));
        let conj = &(&fm * &p.u().to_dense()) * &fm.adjoint();
        assert!(conj.approx_eq(&p.v().to_dense(), 1e-10));
    }

    #[test]
    fn kronecker_mod_small() {
        for n in 2..10 {
            for k in 0..n as i64 {
                for l in 0..n as i64 {
                    let expected = if k == l { 1.0 } else { 0.0 };
                    assert!((kronecker_mod(n, k, l) - c(expected, 0.0)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn label_conventions() {
        assert_eq!(
            LabelConvention::Symmetric.labels(5).unwrap(),
            vec![0, 1, 2, -2, -1]
        );
        assert!(LabelConvention::Symmetric.labels(4).is_err());
        assert_eq!(LabelConvention::Symmetric.to_index(-2, 5).unwrap(), 3);
        assert!(LabelConvention::Symmetric.to_index(3, 5).is_err());
        assert_eq!(LabelConvention::ZeroBased.labels(3).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn clifford_passes_for_built_pairs() {
        let r = verify_clifford(&build_pair(3).unwrap());
        assert!(r.passed());
        let r = verify_clifford(&build_pair(25).unwrap());
        assert!(r.passed());
        assert_eq!(r.relation_instances, 625);
    }

    #[test]
    fn clifford_detects_tampering() {
        let p = build_pair(4).unwrap();
        let mut exps: Vec<i64> = p.v().exponents().iter().map(|&e| e as i64).collect();
        exps[2] += 1;
        let bad_v = PhasedPermutation::new(p.v().perm().to_vec(), exps, p.order()).unwrap();
        let tampered = SchwingerPair::from_parts(p.u().clone(), bad_v).unwrap();
        let r = verify_clifford(&tampered);
        assert!(!r.passed());
        assert!(r.violations.len() <= 10);
        let first = &r.violations[0];
        assert_eq!(first.relation, "weyl");
        assert!(first.exponent_mismatch.unwrap() > 0);
        assert!(r.max_exponent_mismatch >= 1);
    }
}
