//! Operator bases built from clock/shift monomials, decomposition against
//! them, and the discrete phase-space (Weyl–Wigner) map.
//!
//! Four families are provided, all indexed by `(m, n) ∈ {0..N−1}²` with flat
//! index `m·N + n`:
//!
//! * `S1(m,n) = U^m V^n / √N`
//! * `S2(m,n) = S1(m,n) · exp(iπmn/N)`, the symmetrized form
//! * `T(j,l)  = S2(j,l) · exp(iπφ(j,l;N))`, periodic in both labels
//! * `G(m,n)  = Σ_{j,l} T(j,l)/√N · exp(−2πi(mj+nl)/N)`, the phase-space kernel
//!
//! The first three are exact monomials and pair with an operator in `O(N)`.
//! `G` is dense; its coefficients come from solving against its Gram matrix.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector, Dyn, LU};
use num_complex::Complex64;

use crate::dense::{hs_inner, DenseOperator};
use crate::error::{QpsError, Result};
use crate::perm::PhasedPermutation;
use crate::phase::{reduce, root_table};
use crate::schwinger::SchwingerPair;

/// Tolerance for the Hermiticity probe on the `G` kernel.
const HERMITIAN_PROBE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    S1,
    S2,
    TMod,
    GFourier,
}

impl BasisKind {
    pub const ALL: [BasisKind; 4] = [
        BasisKind::S1,
        BasisKind::S2,
        BasisKind::TMod,
        BasisKind::GFourier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::S1 => "s1",
            BasisKind::S2 => "s2",
            BasisKind::TMod => "t",
            BasisKind::GFourier => "g",
        }
    }
}

/// A monomial basis element `scale · P` with `P` an exact phased permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialElement {
    pub op: PhasedPermutation,
    pub scale: f64,
}

impl MonomialElement {
    pub fn to_dense(&self) -> DenseOperator {
        self.op.to_dense_scaled(self.scale)
    }

    /// `Tr[self† · o]`
    pub fn pair(&self, o: &DenseOperator) -> Result<Complex64> {
        Ok(self.op.hs_pair(o)? * self.scale)
    }
}

fn floor_div(a: i64, n: i64) -> i64 {
    a.div_euclid(n)
}

/// The label-correction phase `φ(j,l;N) = ⌊j/N⌋·l + ⌊l/N⌋·j + N·⌊j/N⌋·⌊l/N⌋`.
///
/// Under `j → j+N` the symmetrized element picks up `(−1)^l`; `φ` shifts by
/// `l + 2N⌊l/N⌋`, which has the same parity, so `exp(iπφ)` cancels it.
pub fn phi(j: i64, l: i64, n: usize) -> i128 {
    let n = n as i64;
    let (a, b) = (floor_div(j, n) as i128, floor_div(l, n) as i128);
    a * l as i128 + b * j as i128 + n as i128 * a * b
}

fn scale_of(pair: &SchwingerPair) -> f64 {
    1.0 / (pair.dim() as f64).sqrt()
}

pub fn s1_monomial(pair: &SchwingerPair, m: i64, n: i64) -> MonomialElement {
    MonomialElement {
        op: pair.monomial(m, n),
        scale: scale_of(pair),
    }
}

/// Exponent (order `2N`) of `exp(iπ·jl/N)` times `exp(iπφ)` when `corrected`.
fn symmetrizing_exponent(pair: &SchwingerPair, j: i64, l: i64, corrected: bool) -> u64 {
    let order = pair.order();
    let mut e = j as i128 * l as i128;
    if corrected {
        e += pair.dim() as i128 * phi(j, l, pair.dim());
    }
    reduce(e, order)
}

fn with_global_exponent(op: PhasedPermutation, e: u64) -> PhasedPermutation {
    let order = op.order();
    let phase = crate::phase::RootPhase::new(order, e as i64).expect("order is positive");
    op.scale_phase(phase).expect("same order")
}

pub fn s2_monomial(pair: &SchwingerPair, m: i64, n: i64) -> MonomialElement {
    let e = symmetrizing_exponent(pair, m, n, false);
    MonomialElement {
        op: with_global_exponent(pair.monomial(m, n), e),
        scale: scale_of(pair),
    }
}

pub fn t_mod_monomial(pair: &SchwingerPair, j: i64, l: i64) -> MonomialElement {
    let e = symmetrizing_exponent(pair, j, l, true);
    MonomialElement {
        op: with_global_exponent(pair.monomial(j, l), e),
        scale: scale_of(pair),
    }
}

pub fn s1(n: usize, m: i64, nn: i64) -> Result<DenseOperator> {
    Ok(s1_monomial(&SchwingerPair::new(n)?, m, nn).to_dense())
}

pub fn s2(n: usize, m: i64, nn: i64) -> Result<DenseOperator> {
    Ok(s2_monomial(&SchwingerPair::new(n)?, m, nn).to_dense())
}

pub fn t_mod(n: usize, j: i64, l: i64) -> Result<DenseOperator> {
    Ok(t_mod_monomial(&SchwingerPair::new(n)?, j, l).to_dense())
}

fn g_fourier_with(pair: &SchwingerPair, table: &[Complex64], m: i64, nn: i64) -> DenseOperator {
    let dim = pair.dim();
    let order = pair.order();
    let weight = 1.0 / dim as f64;
    let mut out = DenseOperator::zeros(dim);
    for j in 0..dim as i64 {
        for l in 0..dim as i64 {
            let t = t_mod_monomial(pair, j, l);
            // exp(−2πi(mj+nl)/N) = ζ_{2N}^{−2(mj+nl)}
            let fourier = reduce(-2 * (m as i128 * j as i128 + nn as i128 * l as i128), order);
            for (col, (&row, &e)) in t.op.perm().iter().zip(t.op.exponents()).enumerate() {
                out[(row, col)] += table[((e + fourier) % order) as usize] * weight;
            }
        }
    }
    out
}

/// `G(m,n) = Σ_{j,l} T(j,l)/√N · exp(−2πi(mj+nl)/N)`.
pub fn g_fourier(n: usize, m: i64, nn: i64) -> Result<DenseOperator> {
    let pair = SchwingerPair::new(n)?;
    let table = root_table(pair.order());
    Ok(g_fourier_with(&pair, &table, m, nn))
}

/// The image of `S2(m,n)` under the generator substitution `U → V`,
/// `V → U⁻¹` with relabelling `m → n`, `n → −m`, assembled from dense powers
/// of the substituted generators.
pub fn s2_exchange_image(pair: &SchwingerPair, m: i64, n: i64) -> DenseOperator {
    let dim = pair.dim();
    let new_u = pair.v().to_dense();
    let new_v = pair.u().pow(-1).to_dense();
    let (mm, nn) = (n, -m);
    let power = |a: &DenseOperator, k: i64| {
        let k = k.rem_euclid(dim as i64);
        (0..k).fold(DenseOperator::identity(dim), |acc, _| &acc * a)
    };
    let phase = Complex64::from_polar(
        1.0 / (dim as f64).sqrt(),
        std::f64::consts::PI * (mm * nn) as f64 / dim as f64,
    );
    (&power(&new_u, mm) * &power(&new_v, nn)).scale(phase)
}

/// An `N×N` table of decomposition coefficients `O(m,n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    dim: usize,
    values: Vec<Complex64>,
}

impl CoefficientGrid {
    pub fn new(dim: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != dim * dim {
            return Err(QpsError::EntryCount {
                expected: dim * dim,
                got: values.len(),
            });
        }
        if let Some(i) = values
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(QpsError::NonFinite {
                row: i / dim,
                col: i % dim,
            });
        }
        Ok(Self { dim, values })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            values: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.values[m * self.dim + n]
    }

    pub fn set(&mut self, m: usize, n: usize, z: Complex64) {
        self.values[m * self.dim + n] = z;
    }
}

/// A complete operator basis of one kind for one dimension.
pub struct BasisFamily {
    kind: BasisKind,
    dim: usize,
    elements: Vec<DenseOperator>,
    monomials: Option<Vec<MonomialElement>>,
    gram: Option<DMatrix<Complex64>>,
    gram_lu: Option<LU<Complex64, Dyn, Dyn>>,
    wigner_norm: Option<Complex64>,
    kernel_hermitian: bool,
}

impl std::fmt::Debug for BasisFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BasisFamily")
            .field("kind", &self.kind)
            .field("dim", &self.dim)
            .field("kernel_hermitian", &self.kernel_hermitian)
            .finish_non_exhaustive()
    }
}

type FamilyCache = Mutex<HashMap<(BasisKind, usize), Arc<BasisFamily>>>;

fn family_cache() -> &'static FamilyCache {
    static CACHE: OnceLock<FamilyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl BasisFamily {
    pub fn new(kind: BasisKind, n: usize) -> Result<Self> {
        let pair = SchwingerPair::new(n)?;
        let labels = || (0..n as i64).flat_map(|m| (0..n as i64).map(move |nn| (m, nn)));
        let monomials: Option<Vec<_>> = match kind {
            BasisKind::S1 => Some(labels().map(|(m, nn)| s1_monomial(&pair, m, nn)).collect()),
            BasisKind::S2 => Some(labels().map(|(m, nn)| s2_monomial(&pair, m, nn)).collect()),
            BasisKind::TMod => Some(
                labels()
                    .map(|(m, nn)| t_mod_monomial(&pair, m, nn))
                    .collect(),
            ),
            BasisKind::GFourier => None,
        };
        let elements = match &monomials {
            Some(ms) => ms.iter().map(MonomialElement::to_dense).collect(),
            None => {
                let table = root_table(pair.order());
                labels()
                    .map(|(m, nn)| g_fourier_with(&pair, &table, m, nn))
                    .collect()
            }
        };
        let mut family = Self {
            kind,
            dim: n,
            elements,
            monomials,
            gram: None,
            gram_lu: None,
            wigner_norm: None,
            kernel_hermitian: false,
        };
        if kind == BasisKind::GFourier {
            let gram = family.compute_gram();
            let lu = gram.clone().lu();
            if !gram_is_invertible(&gram, &lu) {
                return Err(QpsError::SingularGram(kind.name().into()));
            }
            family.gram = Some(gram);
            family.gram_lu = Some(lu);
            // Σ_{m,n} Tr[G(m,n)† · I/N]
            let mixed_sum: Complex64 = family
                .elements
                .iter()
                .map(|g| g.trace().conj())
                .sum::<Complex64>()
                / n as f64;
            family.wigner_norm = Some(Complex64::new(1.0, 0.0) / mixed_sum);
            family.kernel_hermitian = family
                .elements
                .iter()
                .all(|g| g.is_hermitian(HERMITIAN_PROBE_TOL));
        }
        Ok(family)
    }

    /// Shared, lazily built family. Construction happens under a lock.
    pub fn cached(kind: BasisKind, n: usize) -> Result<Arc<BasisFamily>> {
        let mut cache = family_cache().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = cache.get(&(kind, n)) {
            return Ok(Arc::clone(f));
        }
        let family = Arc::new(Self::new(kind, n)?);
        cache.insert((kind, n), Arc::clone(&family));
        Ok(family)
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, m: usize, n: usize) -> &DenseOperator {
        &self.elements[m * self.dim + n]
    }

    pub fn elements(&self) -> &[DenseOperator] {
        &self.elements
    }

    /// Exact monomial form, for the monomial kinds.
    pub fn monomial(&self, m: usize, n: usize) -> Option<&MonomialElement> {
        self.monomials.as_ref().map(|ms| &ms[m * self.dim + n])
    }

    /// Whether every element is Hermitian (only probed for the `G` kernel).
    pub fn kernel_hermitian(&self) -> bool {
        self.kernel_hermitian
    }

    /// Normalization `c_N` of the phase-space map (only for the `G` kernel).
    pub fn wigner_norm(&self) -> Option<Complex64> {
        self.wigner_norm
    }

    /// `Tr[element(idx)† · o]`
    fn pair_at(&self, idx: usize, o: &DenseOperator) -> Result<Complex64> {
        match &self.monomials {
            Some(ms) => ms[idx].pair(o),
            None => hs_inner(&self.elements[idx], o),
        }
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(QpsError::DimensionMismatch {
                left: self.dim,
                right: dim,
            });
        }
        Ok(())
    }

    fn compute_gram(&self) -> DMatrix<Complex64> {
        let len = self.len();
        let mut gram = DMatrix::zeros(len, len);
        for a in 0..len {
            for b in a..len {
                let z = self.pair_at(a, &self.elements[b]).expect("same dimension");
                gram[(a, b)] = z;
                gram[(b, a)] = z.conj();
            }
        }
        gram
    }

    /// `Tr[element(m,n)† element(m′,n′)]` over flat indices.
    pub fn gram_matrix(&self) -> DMatrix<Complex64> {
        match &self.gram {
            Some(g) => g.clone(),
            None => self.compute_gram(),
        }
    }

    /// Expansion coefficients of `o`. Orthonormal monomial families use the
    /// trace pairing directly; the `G` family solves against its Gram matrix.
    pub fn decompose(&self, o: &DenseOperator) -> Result<CoefficientGrid> {
        self.check_dim(o.dim())?;
        let pairings = (0..self.len())
            .map(|i| self.pair_at(i, o))
            .collect::<Result<Vec<_>>>()?;
        let values = match &self.gram_lu {
            None => pairings,
            Some(lu) => {
                let rhs = DVector::from_vec(pairings);
                lu.solve(&rhs)
                    .ok_or_else(|| QpsError::SingularGram(self.kind.name().into()))?
                    .iter()
                    .copied()
                    .collect()
            }
        };
        CoefficientGrid::new(self.dim, values)
    }

    /// `Σ coeffs(m,n) · element(m,n)`
    pub fn reconstruct(&self, coeffs: &CoefficientGrid) -> Result<DenseOperator> {
        self.check_dim(coeffs.dim())?;
        let mut out = DenseOperator::zeros(self.dim);
        match &self.monomials {
            Some(ms) => {
                let table = root_table(ms[0].op.order());
                for (m, &c) in ms.iter().zip(coeffs.values()) {
                    if c == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let c = c * m.scale;
                    for (col, (&row, &e)) in m.op.perm().iter().zip(m.op.exponents()).enumerate() {
                        out[(row, col)] += c * table[e as usize];
                    }
                }
            }
            None => {
                for (el, &c) in self.elements.iter().zip(coeffs.values()) {
                    out.axpy(c, el);
                }
            }
        }
        Ok(out)
    }
}

fn gram_is_invertible(gram: &DMatrix<Complex64>, lu: &LU<Complex64, Dyn, Dyn>) -> bool {
    let scale = gram.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let u = lu.u();
    let min_pivot = u
        .diagonal()
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    scale > 0.0 && min_pivot > 1e-12 * scale
}

pub fn decompose(o: &DenseOperator, family: &BasisFamily) -> Result<CoefficientGrid> {
    family.decompose(o)
}

pub fn reconstruct(coeffs: &CoefficientGrid, family: &BasisFamily) -> Result<DenseOperator> {
    family.reconstruct(coeffs)
}

pub fn gram_matrix(family: &BasisFamily) -> DMatrix<Complex64> {
    family.gram_matrix()
}

/// Column `k` holds the `from`-coefficients of `to.element(k)`, so
/// `from_coeffs = M · to_coeffs`.
pub fn basis_change_matrix(from: &BasisFamily, to: &BasisFamily) -> Result<DMatrix<Complex64>> {
    from.check_dim(to.dim())?;
    let len = from.len();
    let mut out = DMatrix::zeros(len, len);
    for (k, el) in to.elements().iter().enumerate() {
        let grid = from.decompose(el)?;
        for (i, &z) in grid.values().iter().enumerate() {
            out[(i, k)] = z;
        }
    }
    Ok(out)
}

/// Ratio of largest to smallest singular value.
pub fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}

/// Discrete phase-space table `W(m,n) = c_N · Tr[G(m,n)† O]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerTable {
    pub dim: usize,
    /// Row-major over `(m, n)`.
    pub values: Vec<Complex64>,
    pub trace: Complex64,
    pub total: Complex64,
    /// True only when the kernel passed the Hermiticity probe and `O` is Hermitian.
    pub real: bool,
}

impl WignerTable {
    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.values[m * self.dim + n]
    }
}

pub fn wigner_map(o: &DenseOperator, n: usize) -> Result<WignerTable> {
    let family = BasisFamily::cached(BasisKind::GFourier, n)?;
    family.check_dim(o.dim())?;
    let norm = family
        .wigner_norm
        .expect("G family carries its normalization");
    let values: Vec<Complex64> = family
        .elements()
        .iter()
        .map(|g| hs_inner(g, o).map(|z| z * norm))
        .collect::<Result<_>>()?;
    let total = values.iter().sum();
    Ok(WignerTable {
        dim: n,
        values,
        trace: o.trace(),
        total,
        real: family.kernel_hermitian() && o.is_hermitian(HERMITIAN_PROBE_TOL),
    })
}
