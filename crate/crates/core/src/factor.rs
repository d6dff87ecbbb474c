//! Splitting the clock/shift algebra of a square-free dimension into
//! commuting prime sub-algebras through the Chinese remainder theorem.
//!
//! For `N = P_1 ⋯ P_h` with distinct primes, the sub-pair of factor `l` is
//!
//! * `U_l = U^{e_l}` where `e_l ≡ 1 (mod P_l)` and `e_l ≡ 0 (mod P_j)`, `j ≠ l`
//! * `V_l = V^{N/P_l}`, whose eigenphase on `|v_m⟩` is `exp(2πi·m_l/P_l)`
//!
//! so `V_l U_l = exp(2πi/P_l) U_l V_l` and sub-pairs of different factors
//! commute. Local shift labels follow `m_l = m mod P_l`; local clock labels
//! follow `n_l = c_l·n mod P_l` with `c_l = (N/P_l)⁻¹ mod P_l`, which makes the
//! product of sub-basis elements land on `U^m V^n`.

use num_complex::Complex64;

use crate::basis::s1_monomial;
use crate::dense::{hs_inner, DenseOperator};
use crate::error::{QpsError, Result};
use crate::perm::PhasedPermutation;
use crate::phase::RootPhase;
use crate::schwinger::SchwingerPair;

/// Prime factors of `n` in nondecreasing order, with multiplicity.
pub fn prime_factorize(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(QpsError::DimensionTooSmall {
            min: 2,
            got: n as usize,
        });
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        while rest.is_multiple_of(p) {
            factors.push(p);
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(rest);
    }
    Ok(factors)
}

/// Inverse of `a` modulo prime `p`, by the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSystem {
    n: u64,
    factors: Vec<u64>,
    /// CRT idempotents `e_l`.
    idempotents: Vec<u64>,
    /// `c_l = (N/P_l)⁻¹ mod P_l`.
    cofactor_inverses: Vec<u64>,
}

impl FactorSystem {
    pub fn new(n: u64) -> Result<Self> {
        let factors = prime_factorize(n)?;
        if factors.windows(2).any(|w| w[0] == w[1]) {
            return Err(QpsError::RepeatedPrimeFactors { n, factors });
        }
        let cofactor_inverses: Vec<u64> = factors.iter().map(|&p| mod_inverse(n / p, p)).collect();
        let idempotents = factors
            .iter()
            .zip(&cofactor_inverses)
            .map(|(&p, &c)| ((n / p) as u128 * c as u128 % n as u128) as u64)
            .collect();
        Ok(Self {
            n,
            factors,
            idempotents,
            cofactor_inverses,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn idempotents(&self) -> &[u64] {
        &self.idempotents
    }

    /// `m ↦ (m mod P_l)_l`
    pub fn crt_forward(&self, m: u64) -> Vec<u64> {
        self.factors.iter().map(|&p| m % p).collect()
    }

    /// Inverse of [`crt_forward`](Self::crt_forward): `Σ_l e_l·m_l mod N`.
    pub fn crt_backward(&self, residues: &[u64]) -> Result<u64> {
        self.check_residues(residues)?;
        Ok(residues
            .iter()
            .zip(&self.idempotents)
            .map(|(&r, &e)| r as u128 * e as u128)
            .sum::<u128>()
            .rem_euclid(self.n as u128) as u64)
    }

    /// Local clock labels `n ↦ (c_l·n mod P_l)_l`.
    pub fn clock_labels_forward(&self, n: u64) -> Vec<u64> {
        self.factors
            .iter()
            .zip(&self.cofactor_inverses)
            .map(|(&p, &c)| (n % p) * c % p)
            .collect()
    }

    /// The clock exponent carried by `Π_l V_l^{n_l}`: `Σ_l (N/P_l)·n_l mod N`.
    pub fn clock_labels_backward(&self, residues: &[u64]) -> Result<u64> {
        self.check_residues(residues)?;
        Ok(residues
            .iter()
            .zip(&self.factors)
            .map(|(&r, &p)| r as u128 * (self.n / p) as u128)
            .sum::<u128>()
            .rem_euclid(self.n as u128) as u64)
    }

    fn check_residues(&self, residues: &[u64]) -> Result<()> {
        if residues.len() != self.factors.len() {
            return Err(QpsError::DimensionMismatch {
                left: self.factors.len(),
                right: residues.len(),
            });
        }
        if let Some((&r, &p)) = residues.iter().zip(&self.factors).find(|(&r, &p)| r >= p) {
            return Err(QpsError::IndexOutOfRange {
                index: r as i64,
                dim: p as usize,
            });
        }
        Ok(())
    }
}

pub fn build_factor_system(n: u64) -> Result<FactorSystem> {
    FactorSystem::new(n)
}

/// The commuting clock/shift pair attached to one prime factor, embedded in the full space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPair {
    pub index: usize,
    pub prime: u64,
    /// `U_l = U^{shift_exponent}`
    pub shift_exponent: u64,
    /// `V_l = V^{clock_exponent}`
    pub clock_exponent: u64,
    pub u: PhasedPermutation,
    pub v: PhasedPermutation,
}

pub fn sub_pair(fs: &FactorSystem, index: usize) -> Result<SubPair> {
    let pair = SchwingerPair::new(fs.n as usize)?;
    sub_pair_of(fs, &pair, index)
}

fn sub_pair_of(fs: &FactorSystem, pair: &SchwingerPair, index: usize) -> Result<SubPair> {
    let prime = *fs.factors.get(index).ok_or(QpsError::FactorIndex {
        index,
        count: fs.factors.len(),
    })?;
    let shift_exponent = fs.idempotents[index];
    let clock_exponent = fs.n / prime;
    Ok(SubPair {
        index,
        prime,
        shift_exponent,
        clock_exponent,
        u: pair.monomial(shift_exponent as i64, 0),
        v: pair.monomial(0, clock_exponent as i64),
    })
}

pub fn sub_pairs(fs: &FactorSystem) -> Result<Vec<SubPair>> {
    let pair = SchwingerPair::new(fs.n as usize)?;
    (0..fs.factors.len())
        .map(|l| sub_pair_of(fs, &pair, l))
        .collect()
}

/// The scalar `c` with `V_a · U_b = c · U_b · V_a`, if the two products
/// differ by a root of unity.
pub fn exchange_phase(v: &PhasedPermutation, u: &PhasedPermutation) -> Option<RootPhase> {
    let vu = v.compose(u).ok()?;
    let uv = u.compose(v).ok()?;
    vu.phase_ratio(&uv)
}

/// Exact form of `Π_l S1_l(m_l, n_l)`, product taken in factor order, as
/// `(1/√N) · P`.
pub fn factorized_monomial(
    fs: &FactorSystem,
    shift_labels: &[u64],
    clock_labels: &[u64],
) -> Result<PhasedPermutation> {
    fs.check_residues(shift_labels)?;
    fs.check_residues(clock_labels)?;
    let pairs = sub_pairs(fs)?;
    let n = fs.n as usize;
    let order = pairs.first().map(|p| p.u.order()).unwrap_or(2 * fs.n);
    pairs
        .iter()
        .zip(shift_labels.iter().zip(clock_labels))
        .try_fold(
            PhasedPermutation::identity(n, order),
            |acc, (sp, (&ml, &nl))| {
                let local = sp.u.pow(ml as i64).compose(&sp.v.pow(nl as i64))?;
                acc.compose(&local)
            },
        )
}

/// `Π_l U_l^{m_l} V_l^{n_l} / √P_l` with `m_l`, `n_l` the local labels of `m`, `n`.
pub fn factorized_s1(fs: &FactorSystem, m: u64, n: u64) -> Result<DenseOperator> {
    let op = factorized_monomial(
        fs,
        &fs.crt_forward(m % fs.n),
        &fs.clock_labels_forward(n % fs.n),
    )?;
    let scale: f64 = fs
        .factors
        .iter()
        .map(|&p| 1.0 / (p as f64).sqrt())
        .product();
    Ok(op.to_dense_scaled(scale))
}

/// Result of matching a factorized element against the direct basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorComparison {
    /// Global labels `(m′, n′)` of the direct element the product lands on.
    pub direct_labels: (u64, u64),
    /// `c` minimising `‖F − c·D‖`, normalized to unit modulus.
    pub phase: Complex64,
    /// The same phase as an exact root of unity, when the monomials agree exactly.
    pub exact_phase: Option<RootPhase>,
    /// `‖F − c·D‖_HS` after alignment.
    pub hs_distance: f64,
}

pub fn compare_with_direct(fs: &FactorSystem, m: u64, n: u64) -> Result<FactorComparison> {
    let shift_labels = fs.crt_forward(m % fs.n);
    let clock_labels = fs.clock_labels_forward(n % fs.n);
    let direct_labels = (
        fs.crt_backward(&shift_labels)?,
        fs.clock_labels_backward(&clock_labels)?,
    );

    let pair = SchwingerPair::new(fs.n as usize)?;
    let direct = s1_monomial(&pair, direct_labels.0 as i64, direct_labels.1 as i64);
    let product = factorized_monomial(fs, &shift_labels, &clock_labels)?;
    let exact_phase = product.phase_ratio(&direct.op);

    let factorized = factorized_s1(fs, m, n)?;
    let direct_dense = direct.to_dense();
    let overlap = hs_inner(&direct_dense, &factorized)?;
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let hs_distance = (&factorized - &direct_dense.scale(phase)).hs_norm();
    Ok(FactorComparison {
        direct_labels,
        phase,
        exact_phase,
        hs_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(prime_factorize(15).unwrap(), vec![3, 5]);
        assert_eq!(prime_factorize(105).unwrap(), vec![3, 5, 7]);
        assert_eq!(prime_factorize(12).unwrap(), vec![2, 2, 3]);
        assert_eq!(prime_factorize(97).unwrap(), vec![97]);
        assert!(prime_factorize(1).is_err());
    }

    #[test]
    fn crt_examples() {
        let fs = build_factor_system(15).unwrap();
        assert_eq!(fs.crt_forward(7), vec![1, 2]);
        assert_eq!(fs.crt_backward(&[1, 2]).unwrap(), 7);
        assert!(fs.crt_backward(&[3, 0]).is_err());
        assert!(matches!(
            build_factor_system(12),
            Err(QpsError::RepeatedPrimeFactors { .. })
        ));
    }

    #[test]
    fn mod_inverse_small() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for a in 1..p {
                assert_eq!(a * mod_inverse(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn sub_pair_relations_at_fifteen() {
        let fs = build_factor_system(15).unwrap();
        let three = sub_pair(&fs, 0).unwrap();
        let five = sub_pair(&fs, 1).unwrap();
        assert!(three.u.pow(3).is_identity());
        assert!(three.v.pow(3).is_identity());
        assert!(five.u.pow(5).is_identity());
        assert!(exchange_phase(&three.v, &five.u).unwrap().is_one());
        // exp(2πi/3) at order 2N = 30 is exponent 10
        assert_eq!(
            exchange_phase(&three.v, &three.u).unwrap(),
            RootPhase::new(30, 10).unwrap()
        );
        assert!(sub_pair(&fs, 2).is_err());
    }

    #[test]
    fn identity_element_at_fifteen() {
        let fs = build_factor_system(15).unwrap();
        let e = factorized_s1(&fs, 0, 0).unwrap();
        assert!(e.approx_eq(
            &DenseOperator::identity(15).scale(Complex64::new(1.0 / 15f64.sqrt(), 0.0)),
            1e-14
        ));
    }

    #[test]
    fn six_one_one_matches_direct() {
        let fs = build_factor_system(6).unwrap();
        let cmp = compare_with_direct(&fs, 1, 1).unwrap();
        assert_eq!(cmp.direct_labels, (1, 1));
        assert!((cmp.phase.norm() - 1.0).abs() < 1e-12);
        assert!(cmp.hs_distance < 1e-10);
        let direct = crate::basis::s1(6, 1, 1).unwrap();
        let fact = factorized_s1(&fs, 1, 1).unwrap();
        assert!(fact.approx_eq(&direct.scale(cmp.phase), 1e-12));
    }

    #[test]
    fn clock_label_maps_invert() {
        let fs = build_factor_system(30).unwrap();
        for n in 0..30 {
            assert_eq!(
                fs.clock_labels_backward(&fs.clock_labels_forward(n))
                    .unwrap(),
                n
            );
        }
    }
}
