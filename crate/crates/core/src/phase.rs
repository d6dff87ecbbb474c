//! Exact roots of unity stored as an exponent modulo an order.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{QpsError, Result};

/// The root of unity `exp(2πi·exponent/order)`, with the exponent kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootPhase {
    order: u64,
    exponent: u64,
}

impl RootPhase {
    /// Builds a phase from any integer exponent, reducing it modulo `order`.
    pub fn new(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(QpsError::ZeroOrder);
        }
        Ok(Self {
            order,
            exponent: reduce(exponent as i128, order),
        })
    }

    pub fn one(order: u64) -> Result<Self> {
        Self::new(order, 0)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    /// Product of two phases of equal order.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: RootPhase) -> Result<RootPhase> {
        if self.order != other.order {
            return Err(QpsError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(Self {
            order: self.order,
            exponent: (self.exponent + other.exponent) % self.order,
        })
    }

    pub fn conj(self) -> RootPhase {
        Self {
            order: self.order,
            exponent: (self.order - self.exponent) % self.order,
        }
    }

    pub fn pow(self, k: i64) -> RootPhase {
        Self {
            order: self.order,
            exponent: reduce(self.exponent as i128 * k as i128, self.order),
        }
    }

    /// Re-expresses the same value as a root of unity of order `new_order`.
    pub fn promote(self, new_order: u64) -> Result<RootPhase> {
        if new_order == 0 || !new_order.is_multiple_of(self.order) {
            return Err(QpsError::InvalidPromotion {
                from: self.order,
                to: new_order,
            });
        }
        Ok(Self {
            order: new_order,
            exponent: self.exponent * (new_order / self.order),
        })
    }

    /// The complex value. Quarter turns are produced exactly.
    pub fn value(&self) -> Complex64 {
        root_of_unity(self.order, self.exponent)
    }
}

impl fmt::Display for RootPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(2πi·{}/{})", self.exponent, self.order)
    }
}

pub(crate) fn reduce(value: i128, order: u64) -> u64 {
    value.rem_euclid(order as i128) as u64
}

/// `exp(2πi·exponent/order)`, exact on the real and imaginary axes.
pub(crate) fn root_of_unity(order: u64, exponent: u64) -> Complex64 {
    let e = exponent % order;
    if (4 * e).is_multiple_of(order) {
        return match 4 * e / order {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // Fold into [0, order/2] so large exponents do not lose accuracy.
    let (e, sign) = if 2 * e > order {
        (order - e, -1.0)
    } else {
        (e, 1.0)
    };
    let angle = 2.0 * PI * e as f64 / order as f64;
    Complex64::new(angle.cos(), sign * angle.sin())
}

/// Table of all `order` roots of unity, indexed by exponent.
pub(crate) fn root_table(order: u64) -> Vec<Complex64> {
    (0..order).map(|e| root_of_unity(order, e)).collect()
}

/// `phase_mul` as a free function.
pub fn phase_mul(a: RootPhase, b: RootPhase) -> Result<RootPhase> {
    a.mul(b)
}

/// `phase_promote` as a free function.
pub fn phase_promote(a: RootPhase, new_order: u64) -> Result<RootPhase> {
    a.promote(new_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(order: u64, e: i64) -> RootPhase {
        RootPhase::new(order, e).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(phase_mul(p(3, 2), p(3, 2)).unwrap(), p(3, 1));
        assert_eq!(phase_mul(p(6, 3), p(6, 3)).unwrap(), p(6, 0));
        assert_eq!(phase_mul(p(5, 4), p(5, 0)).unwrap(), p(5, 4));
    }

    #[test]
    fn multiplication_rejects_mixed_orders() {
        assert_eq!(
            phase_mul(p(3, 1), p(6, 1)),
            Err(QpsError::OrderMismatch { left: 3, right: 6 })
        );
    }

    #[test]
    fn promotion_examples() {
        assert_eq!(phase_promote(p(3, 1), 6).unwrap(), p(6, 2));
        assert_eq!(phase_promote(p(2, 1), 8).unwrap(), p(8, 4));
        assert_eq!(phase_promote(p(5, 0), 10).unwrap(), p(10, 0));
        assert!(phase_promote(p(3, 1), 8).is_err());
    }

    #[test]
    fn negative_exponents_reduce() {
        assert_eq!(p(7, -1).exponent(), 6);
        assert_eq!(p(7, -15).exponent(), 6);
        assert!(RootPhase::new(0, 1).is_err());
    }

    #[test]
    fn value_matches_exponential() {
        for order in 1..40u64 {
            for e in 0..order {
                let z = p(order, e as i64).value();
                let angle = 2.0 * PI * e as f64 / order as f64;
                assert!((z - Complex64::from_polar(1.0, angle)).norm() < 1e-14);
            }
        }
        assert_eq!(p(2, 1).value(), Complex64::new(-1.0, 0.0));
        assert_eq!(p(4, 3).value(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn conj_and_pow() {
        assert_eq!(p(3, 1).conj(), p(3, 2));
        assert_eq!(p(6, 0).conj(), p(6, 0));
        assert_eq!(p(5, 2).pow(3), p(5, 1));
        assert_eq!(p(5, 2).pow(-1), p(5, 3));
    }
}
