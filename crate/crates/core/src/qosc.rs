//! Creation and annihilation operators built from the clock/shift pair, and
//! the q-deformed relation `a a† − ω a† a = ω^{−N̂}` at `ω = exp(2πi/N)`.
//!
//! In the clock eigenbasis `a† = U` and
//! `a = Σ_k s(k) |v_{k−1}⟩⟨v_k|` with `s(k) = sin(2πk/N)/sin(2π/N)`.
//! Odd `N` is required so that `s` vanishes only at `k ≡ 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dense::DenseOperator;
use crate::error::{QpsError, Result};
use crate::perm::PhasedPermutation;
use crate::phase::RootPhase;
use crate::schwinger::{LabelConvention, SchwingerPair};

/// Entrywise tolerance on the q-relation: `1e−12` up to `N = 31`, `1e−10` above.
pub fn q_relation_tolerance(n: usize) -> f64 {
    if n <= 31 {
        1e-12
    } else {
        1e-10
    }
}

fn check_odd(n: usize) -> Result<()> {
    if n < 3 {
        return Err(QpsError::DimensionTooSmall { min: 3, got: n });
    }
    if n.is_multiple_of(2) {
        return Err(QpsError::EvenDimension(n));
    }
    Ok(())
}

/// `s(k) = sin(2πk/N)/sin(2π/N)`, with `k` reduced into `(−N/2, N/2]` first
/// so that `s(−k) = −s(k)` holds bit for bit.
pub fn ladder_coefficient(n: usize, k: i64) -> f64 {
    let n_i = n as i64;
    let mut r = k.rem_euclid(n_i);
    if 2 * r > n_i {
        r -= n_i;
    }
    let s = |x: i64| (2.0 * PI * x as f64 / n as f64).sin();
    r.signum() as f64 * s(r.abs()) / s(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QOscillator {
    n: usize,
    omega: RootPhase,
    a: DenseOperator,
    a_dagger: PhasedPermutation,
    number_op: DenseOperator,
}

impl QOscillator {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_convention(n, LabelConvention::ZeroBased)
    }

    /// Like [`new`](Self::new) with the number operator's spectrum labelled by `convention`.
    pub fn with_convention(n: usize, convention: LabelConvention) -> Result<Self> {
        check_odd(n)?;
        let pair = SchwingerPair::new(n)?;
        let mut a = DenseOperator::zeros(n);
        for k in 1..n {
            a[(k - 1, k)] = Complex64::new(ladder_coefficient(n, k as i64), 0.0);
        }
        let labels = convention.labels(n)?;
        let number_op = DenseOperator::diagonal(
            &labels
                .iter()
                .map(|&l| Complex64::new(l as f64, 0.0))
                .collect::<Vec<_>>(),
        );
        Ok(Self {
            n,
            omega: RootPhase::new(n as u64, 1)?,
            a,
            a_dagger: pair.u().clone(),
            number_op,
        })
    }

    /// Assembles an oscillator from given ladder operators without checking
    /// them; for negative controls of [`verify_q_relation`].
    pub fn from_parts(a: DenseOperator, a_dagger: PhasedPermutation) -> Result<Self> {
        let n = a.dim();
        if a_dagger.dim() != n {
            return Err(QpsError::DimensionMismatch {
                left: n,
                right: a_dagger.dim(),
            });
        }
        check_odd(n)?;
        let number_op = DenseOperator::diagonal(
            &(0..n)
                .map(|k| Complex64::new(k as f64, 0.0))
                .collect::<Vec<_>>(),
        );
        Ok(Self {
            n,
            omega: RootPhase::new(n as u64, 1)?,
            a,
            a_dagger,
            number_op,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> RootPhase {
        self.omega
    }

    pub fn a(&self) -> &DenseOperator {
        &self.a
    }

    pub fn a_dagger(&self) -> &PhasedPermutation {
        &self.a_dagger
    }

    pub fn number_op(&self) -> &DenseOperator {
        &self.number_op
    }

    pub fn ladder_coefficients(&self) -> Vec<f64> {
        (0..self.n as i64)
            .map(|k| ladder_coefficient(self.n, k))
            .collect()
    }

    /// `ω^{−N̂}` from the diagonal of the number operator.
    pub fn omega_neg_number(&self) -> DenseOperator {
        let diag: Vec<Complex64> = (0..self.n)
            .map(|k| {
                let label = self.number_op[(k, k)].re.round() as i64;
                self.omega.pow(-label).value()
            })
            .collect();
        DenseOperator::diagonal(&diag)
    }
}

pub fn build_qosc(n: usize) -> Result<QOscillator> {
    QOscillator::new(n)
}

/// `a = U⁻¹ (V − V⁻¹)/(ω − ω⁻¹)` assembled from dense unitaries.
pub fn annihilator_from_unitaries(pair: &SchwingerPair) -> Result<DenseOperator> {
    check_odd(pair.dim())?;
    let n = pair.dim();
    let u_inv = pair.u().pow(-1).to_dense();
    let v = pair.v().to_dense();
    let v_inv = pair.v().pow(-1).to_dense();
    let omega = RootPhase::new(n as u64, 1)?;
    let denom = omega.value() - omega.conj().value();
    Ok((&u_inv * &(&v - &v_inv)).scale(Complex64::new(1.0, 0.0) / denom))
}

/// `A·B − q·B·A`
pub fn q_commutator(a: &DenseOperator, b: &DenseOperator, q: Complex64) -> Result<DenseOperator> {
    let ab = a.try_matmul(b)?;
    let ba = b.try_matmul(a)?;
    ab.try_sub(&ba.scale(q))
}

#[derive(Debug, Clone, PartialEq)]
pub struct QCommutatorReport {
    pub n: usize,
    pub max_abs_deviation: f64,
    /// Largest deviation in each column (state `|v_k⟩`).
    pub deviations: Vec<f64>,
    pub tolerance: f64,
}

impl QCommutatorReport {
    pub fn passed(&self) -> bool {
        self.max_abs_deviation < self.tolerance
    }
}

/// Measures `a a† − ω a† a − ω^{−N̂}` entrywise, at the default tolerance for `N`.
pub fn verify_q_relation(osc: &QOscillator) -> QCommutatorReport {
    verify_q_relation_with(osc, q_relation_tolerance(osc.n))
}

pub fn verify_q_relation_with(osc: &QOscillator, tolerance: f64) -> QCommutatorReport {
    let n = osc.n;
    let comm =
        q_commutator(&osc.a, &osc.a_dagger.to_dense(), osc.omega.value()).expect("same dimension");
    let residual = &comm - &osc.omega_neg_number();
    let deviations: Vec<f64> = (0..n)
        .map(|col| {
            (0..n)
                .map(|row| residual[(row, col)].norm())
                .fold(0.0, f64::max)
        })
        .collect();
    let max_abs_deviation = deviations.iter().copied().fold(0.0, f64::max);
    QCommutatorReport {
        n,
        max_abs_deviation,
        deviations,
        tolerance,
    }
}

/// How the ladder operators act on one clock eigenstate.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipletState {
    pub k: usize,
    /// `a†|v_k⟩ = |v_raised⟩`
    pub raised: usize,
    /// `a|v_k⟩ = coefficient·|v_target⟩`, or `None` when `a|v_k⟩ = 0`.
    pub lowered: Option<(usize, f64)>,
}

impl MultipletState {
    /// True for the state whose raising wraps back to the vacuum.
    pub fn wraps(&self) -> bool {
        self.raised < self.k
    }
}

fn single_image(v: &[Complex64]) -> Option<(usize, Complex64)> {
    let mut hits = v.iter().enumerate().filter(|(_, z)| z.norm() > 1e-12);
    let first = hits.next().map(|(i, &z)| (i, z));
    if hits.next().is_some() {
        None
    } else {
        first
    }
}

/// Applies `a` and `a†` to every `|v_k⟩`.
pub fn multiplet(osc: &QOscillator) -> Vec<MultipletState> {
    let n = osc.n;
    let a_dag = osc.a_dagger.to_dense();
    (0..n)
        .map(|k| {
            let mut basis = vec![Complex64::new(0.0, 0.0); n];
            basis[k] = Complex64::new(1.0, 0.0);
            let raised = single_image(&a_dag.apply(&basis))
                .map(|(i, _)| i)
                .expect("a† is a permutation");
            let lowered = single_image(&osc.a.apply(&basis)).map(|(i, z)| (i, z.re));
            MultipletState { k, raised, lowered }
        })
        .collect()
}
