//! Finite matrices assembled from a symbol: truncated Toeplitz, circulant,
//! the diagonal symmetrizer and the collapsed symbol.

use crate::linalg::DenseComplexMatrix;
use crate::symbol::SymbolCoefficients;
use crate::util::principal_sqrt;
use crate::{C64, Error};

/// Symmetrizer magnitudes beyond e^600 would overflow f64 well before
/// f64::MAX once multiplied into matrix entries.
const SYMMETRIZER_LOG_GUARD: f64 = 600.0;

/// Boundary condition of a finite assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    OpenBoundary,
    PeriodicBoundary,
}

/// A finite mk × mk lattice matrix: tridiagonal with period-k entries, plus
/// two corner entries for periodic boundary conditions.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    pub m: usize,
    pub k: usize,
    pub matrix: DenseComplexMatrix,
    pub kind: BoundaryKind,
}

impl FiniteLattice {
    pub fn order(&self) -> usize {
        self.m * self.k
    }
}

/// Truncated Toeplitz matrix T_{mk}(a): diagonals cycle a_1..a_k, b_1..b_k,
/// c_1..c_k with no corner terms.
pub fn toeplitz_matrix(s: &SymbolCoefficients, m: usize) -> Result<FiniteLattice, Error> {
    if m == 0 {
        return Err(Error::invalid("toeplitz_matrix requires at least one unit cell"));
    }
    let k = s.k();
    let n = m * k;
    let mut matrix = DenseComplexMatrix::zeros(n);
    for i in 0..n {
        matrix[(i, i)] = s.diag()[i % k];
    }
    for i in 0..n - 1 {
        matrix[(i, i + 1)] = s.upper()[i % k];
        matrix[(i + 1, i)] = s.lower()[i % k];
    }
    Ok(FiniteLattice { m, k, matrix, kind: BoundaryKind::OpenBoundary })
}

/// Circulant matrix C_{mk}(a): the Toeplitz assembly plus corner entries
/// (1, mk) = c_k and (mk, 1) = b_k. Corners accumulate onto band cells when
/// they coincide (k = 1, m = 2), matching the block decomposition over roots
/// of unity.
pub fn circulant_matrix(s: &SymbolCoefficients, m: usize) -> Result<FiniteLattice, Error> {
    if m < 2 {
        return Err(Error::CornerCollision);
    }
    let k = s.k();
    let mut lattice = toeplitz_matrix(s, m)?;
    let n = m * k;
    lattice.matrix[(0, n - 1)] += s.lower()[k - 1];
    lattice.matrix[(n - 1, 0)] += s.upper()[k - 1];
    lattice.kind = BoundaryKind::PeriodicBoundary;
    Ok(lattice)
}

/// Collapsed symbol ã: same diagonal, both off-diagonals the principal square
/// root √(b_i c_i). T_{mk}(ã) is diagonally similar to T_{mk}(a), so finite
/// open-boundary spectra coincide exactly while the assembled entries stay
/// bounded.
pub fn collapsed_symbol(s: &SymbolCoefficients) -> Result<SymbolCoefficients, Error> {
    let roots: Result<Vec<C64>, Error> = s
        .upper()
        .iter()
        .zip(s.lower())
        .enumerate()
        .map(|(index, (b, c))| {
            let product = b * c;
            if product.norm() == 0.0 {
                return Err(Error::ReciprocalDegenerate { index });
            }
            Ok(principal_sqrt(product))
        })
        .collect();
    let roots = roots?;
    SymbolCoefficients::new(s.diag().to_vec(), roots.clone(), roots)?
        .with_spatial_period(s.spatial_period())
}

/// Diagonal of the symmetrizer D_{mk}: cumulative products
/// D_{ii} = √(T_{i−1,i} / T_{i,i−1}) · D_{i−1,i−1}, D_{11} = 1.
/// Conjugation D T D⁻¹ is symmetric; magnitudes grow like e^{Δ·i/(2k)}, so a
/// guard rejects assemblies whose ln-scale exceeds 600 and points callers to
/// the collapsed symbol.
pub fn symmetrizer(s: &SymbolCoefficients, m: usize) -> Result<Vec<C64>, Error> {
    if m == 0 {
        return Err(Error::invalid("symmetrizer requires at least one unit cell"));
    }
    s.require_nonzero_off_diagonals()?;
    let geometry = s.ellipse_geometry()?;
    let log_magnitude = (m as f64) * geometry.delta.abs() / 2.0;
    if log_magnitude > SYMMETRIZER_LOG_GUARD {
        return Err(Error::SymmetrizerOverflow { log_magnitude });
    }
    let k = s.k();
    let n = m * k;
    let mut diag = Vec::with_capacity(n);
    diag.push(C64::new(1.0, 0.0));
    for i in 1..n {
        let ratio = s.upper()[(i - 1) % k] / s.lower()[(i - 1) % k];
        let prev = diag[i - 1];
        diag.push(principal_sqrt(ratio) * prev);
    }
    Ok(diag)
}
