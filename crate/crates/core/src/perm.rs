//! Exact monomial (phased permutation) matrices.
//!
//! A [`PhasedPermutation`] of dimension `N` holds the matrix whose only
//! nonzero entry in column `j` sits at row `perm[j]` and equals the root of
//! unity `phases[j]`. Products, adjoints and powers stay in this class, so
//! every algebraic identity between clock and shift monomials can be checked
//! with integer arithmetic on exponents.

use num_complex::Complex64;

use crate::dense::DenseOperator;
use crate::error::{QpsError, Result};
use crate::phase::{reduce, root_table, RootPhase};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhasedPermutation {
    order: u64,
    perm: Vec<usize>,
    exponents: Vec<u64>,
}

impl PhasedPermutation {
    /// Builds a phased permutation. `perm[j]` is the row of column `j`;
    /// `exponents[j]` is reduced modulo `order`.
    pub fn new(perm: Vec<usize>, exponents: Vec<i64>, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(QpsError::ZeroOrder);
        }
        let dim = perm.len();
        if dim == 0 {
            return Err(QpsError::DimensionTooSmall { min: 1, got: 0 });
        }
        if exponents.len() != dim {
            return Err(QpsError::DimensionMismatch {
                left: dim,
                right: exponents.len(),
            });
        }
        let mut seen = vec![false; dim];
        for (col, &row) in perm.iter().enumerate() {
            if row >= dim {
                return Err(QpsError::InvalidPermutation(format!(
                    "column {col} maps to row {row} outside 0..{dim}"
                )));
            }
            if std::mem::replace(&mut seen[row], true) {
                return Err(QpsError::InvalidPermutation(format!("row {row} hit twice")));
            }
        }
        let exponents = exponents
            .into_iter()
            .map(|e| reduce(e as i128, order))
            .collect();
        Ok(Self {
            order,
            perm,
            exponents,
        })
    }

    pub fn identity(dim: usize, order: u64) -> Self {
        assert!(dim > 0 && order > 0);
        Self {
            order,
            perm: (0..dim).collect(),
            exponents: vec![0; dim],
        }
    }

    /// The phased permutation with `perm` and a single root of unity on every entry.
    pub(crate) fn from_raw(perm: Vec<usize>, exponents: Vec<u64>, order: u64) -> Self {
        debug_assert_eq!(perm.len(), exponents.len());
        Self {
            order,
            perm,
            exponents,
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn phase(&self, col: usize) -> RootPhase {
        RootPhase::new(self.order, self.exponents[col] as i64).expect("order is positive")
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &r)| j == r) && self.exponents.iter().all(|&e| e == 0)
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &PhasedPermutation) -> Result<PhasedPermutation> {
        if self.dim() != rhs.dim() {
            return Err(QpsError::DimensionMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        if self.order != rhs.order {
            return Err(QpsError::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        let (perm, exponents) = rhs
            .perm
            .iter()
            .zip(&rhs.exponents)
            .map(|(&mid, &e)| (self.perm[mid], (self.exponents[mid] + e) % self.order))
            .unzip();
        Ok(Self::from_raw(perm, exponents, self.order))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> PhasedPermutation {
        let dim = self.dim();
        let mut perm = vec![0; dim];
        let mut exponents = vec![0; dim];
        for (col, &row) in self.perm.iter().enumerate() {
            perm[row] = col;
            exponents[row] = (self.order - self.exponents[col]) % self.order;
        }
        Self::from_raw(perm, exponents, self.order)
    }

    /// Integer power; negative powers go through the adjoint (inverse).
    pub fn pow(&self, k: i64) -> PhasedPermutation {
        let mut base = if k < 0 { self.adjoint() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.dim(), self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same shape");
            }
            base = base.compose(&base).expect("same shape");
            e >>= 1;
        }
        acc
    }

    /// Multiplies every entry by the scalar phase `c`.
    pub fn scale_phase(&self, c: RootPhase) -> Result<PhasedPermutation> {
        if c.order() != self.order {
            return Err(QpsError::OrderMismatch {
                left: self.order,
                right: c.order(),
            });
        }
        let exponents = self
            .exponents
            .iter()
            .map(|&e| (e + c.exponent()) % self.order)
            .collect();
        Ok(Self::from_raw(self.perm.clone(), exponents, self.order))
    }

    /// Same matrix with phases expressed at order `new_order`.
    pub fn promote(&self, new_order: u64) -> Result<PhasedPermutation> {
        if new_order == 0 || !new_order.is_multiple_of(self.order) {
            return Err(QpsError::InvalidPromotion {
                from: self.order,
                to: new_order,
            });
        }
        let factor = new_order / self.order;
        let exponents = self.exponents.iter().map(|&e| e * factor).collect();
        Ok(Self::from_raw(self.perm.clone(), exponents, new_order))
    }

    /// If `self = c · other` for a scalar root of unity `c`, returns `c`.
    pub fn phase_ratio(&self, other: &PhasedPermutation) -> Option<RootPhase> {
        if self.dim() != other.dim() || self.order != other.order || self.perm != other.perm {
            return None;
        }
        let diff = |j: usize| (self.order + self.exponents[j] - other.exponents[j]) % self.order;
        let c = diff(0);
        (1..self.dim())
            .all(|j| diff(j) == c)
            .then(|| RootPhase::new(self.order, c as i64).expect("order is positive"))
    }

    /// Exact trace as a sum over the fixed points.
    pub fn trace(&self) -> Complex64 {
        let table = root_table(self.order);
        self.perm
            .iter()
            .enumerate()
            .filter(|(j, &r)| *j == r)
            .map(|(j, _)| table[self.exponents[j] as usize])
            .sum()
    }

    pub fn to_dense(&self) -> DenseOperator {
        self.to_dense_scaled(1.0)
    }

    pub(crate) fn to_dense_scaled(&self, scale: f64) -> DenseOperator {
        let dim = self.dim();
        let table = root_table(self.order);
        let mut out = DenseOperator::zeros(dim);
        for (col, (&row, &e)) in self.perm.iter().zip(&self.exponents).enumerate() {
            out[(row, col)] = table[e as usize] * scale;
        }
        out
    }

    /// `Tr[self† · op]`, computed in O(N).
    pub fn hs_pair(&self, op: &DenseOperator) -> Result<Complex64> {
        if self.dim() != op.dim() {
            return Err(QpsError::DimensionMismatch {
                left: self.dim(),
                right: op.dim(),
            });
        }
        let table = root_table(self.order);
        Ok(self
            .perm
            .iter()
            .zip(&self.exponents)
            .enumerate()
            .map(|(col, (&row, &e))| table[e as usize].conj() * op[(row, col)])
            .sum())
    }
}

/// `pp_compose` as a free function.
pub fn pp_compose(a: &PhasedPermutation, b: &PhasedPermutation) -> Result<PhasedPermutation> {
    a.compose(b)
}

pub fn pp_adjoint(a: &PhasedPermutation) -> PhasedPermutation {
    a.adjoint()
}

pub fn pp_to_dense(a: &PhasedPermutation) -> DenseOperator {
    a.to_dense()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn shift(n: usize) -> PhasedPermutation {
        PhasedPermutation::new((0..n).map(|l| (l + 1) % n).collect(), vec![0; n], n as u64).unwrap()
    }

    fn clock(n: usize) -> PhasedPermutation {
        PhasedPermutation::new((0..n).collect(), (0..n as i64).collect(), n as u64).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(PhasedPermutation::new(vec![0, 0], vec![0, 0], 2).is_err());
        assert!(PhasedPermutation::new(vec![0, 2], vec![0, 0], 2).is_err());
        assert!(PhasedPermutation::new(vec![1, 0], vec![0], 2).is_err());
    }

    #[test]
    fn clock_shift_exchange_at_three() {
        let (u, v) = (shift(3), clock(3));
        let vu = v.compose(&u).unwrap();
        let uv = u.compose(&v).unwrap();
        assert_eq!(vu.phase_ratio(&uv), Some(RootPhase::new(3, 1).unwrap()));
        assert_eq!(vu, uv.scale_phase(RootPhase::new(3, 1).unwrap()).unwrap());
    }

    #[test]
    fn shift_times_inverse_is_identity() {
        let u = shift(5);
        assert!(u.compose(&u.pow(-1)).unwrap().is_identity());
        assert!(u.pow(5).is_identity());
    }

    #[test]
    fn adjoint_examples() {
        let ud = shift(3).adjoint();
        assert_eq!(ud.perm(), &[2, 0, 1]);
        assert!(ud.exponents().iter().all(|&e| e == 0));
        assert_eq!(clock(3).adjoint().exponents(), &[0, 2, 1]);
    }

    #[test]
    fn dense_examples() {
        let u = shift(2).to_dense();
        assert_eq!(u[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(u[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(u[(0, 0)], Complex64::new(0.0, 0.0));
        let v = clock(2).to_dense();
        assert_eq!(v[(1, 1)], Complex64::new(-1.0, 0.0));
        assert_eq!(v[(0, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn compose_rejects_mismatch() {
        assert!(shift(3).compose(&shift(4)).is_err());
        assert!(shift(3).compose(&shift(3).promote(6).unwrap()).is_err());
    }

    #[test]
    fn trace_and_pairing() {
        let v = clock(4);
        assert!(v.trace().norm() < 1e-15);
        assert_eq!(
            PhasedPermutation::identity(4, 4).trace(),
            Complex64::new(4.0, 0.0)
        );
        let d = v.to_dense();
        assert!((v.hs_pair(&d).unwrap() - Complex64::new(4.0, 0.0)).norm() < 1e-14);
    }
}
