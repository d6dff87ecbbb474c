//! Finite-dimensional quantum phase space.
//!
//! Schwinger's clock and shift operators on an `N`-level space, the operator
//! bases built from them, a discrete Weyl–Wigner map, prime factorization of
//! the operator algebra, and the root-of-unity q-deformed oscillator.
//!
//! Algebraic identities are checked on exact [`PhasedPermutation`]s whose
//! entries are roots of unity held as integer exponents; everything else
//! goes through double-precision [`DenseOperator`]s.

pub mod basis;
pub mod cli;
pub mod dense;
pub mod error;
pub mod factor;
pub mod perm;
pub mod phase;
pub mod qosc;
pub mod schwinger;
pub mod tolerance;

pub use basis::{BasisFamily, BasisKind, CoefficientGrid, WignerTable};
pub use dense::{hs_inner, DenseOperator};
pub use error::{QpsError, Result};
pub use factor::{FactorSystem, SubPair};
pub use perm::PhasedPermutation;
pub use phase::RootPhase;
pub use qosc::{QCommutatorReport, QOscillator};
pub use schwinger::{LabelConvention, SchwingerPair};

pub use num_complex::Complex64;
