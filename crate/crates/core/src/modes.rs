//! Eigenmode construction and analysis.
//!
//! Every eigenvector of the semi-infinite operator is a combination of the
//! quasiperiodic extensions built from its two quasimomenta: block j of the
//! extension is z⁻ʲ times a fixed unit cell, so amplitudes scale by e^{−β}
//! per cell. The extensions satisfy the eigenvalue equation in every row but
//! the first; a 2×1 linear condition on the first row fixes the combination.

use crate::gbz::locate_quasiperiodicities;
use crate::lattice::toeplitz_matrix;
use crate::linalg::{inverse_iteration, DenseComplexMatrix};
use crate::symbol::{Quasiperiodicity, SymbolCoefficients};
use crate::{C64, Error};

/// A quasiperiodic extension: block j equals z⁻ʲ · base.
#[derive(Debug, Clone)]
pub struct QuasiperiodicMode {
    pub base: Vec<C64>,
    pub z: C64,
    pub cells: usize,
    pub samples: Vec<C64>,
}

/// Extend one unit cell of amplitudes quasiperiodically over `m` cells.
pub fn quasiperiodic_extension(base: &[C64], z: C64, m: usize) -> Result<QuasiperiodicMode, Error> {
    if z.norm() == 0.0 {
        return Err(Error::ZeroEvaluationPoint);
    }
    if base.is_empty() || m == 0 {
        return Err(Error::invalid("quasiperiodic extension needs a nonempty cell and m >= 1"));
    }
    let mut samples = Vec::with_capacity(base.len() * m);
    let mut factor = C64::new(1.0, 0.0);
    let inv = 1.0 / z;
    for _ in 0..m {
        samples.extend(base.iter().map(|v| v * factor));
        factor *= inv;
    }
    Ok(QuasiperiodicMode { base: base.to_vec(), z, cells: m, samples })
}

/// An eigenvector of the semi-infinite operator rendered over finitely many
/// cells: coefficients of the two quasiperiodic extensions plus the combined
/// samples and the realized row residual.
#[derive(Debug, Clone)]
pub struct SymbolicEigenvector {
    pub coefficients: (C64, C64),
    pub quasiperiodicities: (Quasiperiodicity, Quasiperiodicity),
    pub modes: (QuasiperiodicMode, QuasiperiodicMode),
    pub samples: Vec<C64>,
    /// Max row residual of (T(a) − λ) over the rendered cells, excluding the
    /// truncation tail row, relative to the amplitude and coefficient scale.
    pub residual: f64,
}

/// Build the eigenvector of T(a) for a non-exterior λ as the combination of
/// its two quasiperiodic extensions that also satisfies the first row.
/// Coincident quasimomenta (the confluent case at β = Δ/2) are rejected.
pub fn symbolic_eigenvector(
    s: &SymbolCoefficients,
    lambda: C64,
    m_render: usize,
) -> Result<SymbolicEigenvector, Error> {
    if m_render < 2 {
        return Err(Error::invalid("symbolic_eigenvector requires m_render >= 2"));
    }
    let (q1, q2) = locate_quasiperiodicities(s, lambda)?;
    let period = s.spatial_period();
    let z1 = q1.associated_point(period);
    let z2 = q2.associated_point(period);
    if (z1 - z2).norm() <= 1e-9 * (z1.norm() + z2.norm()) {
        return Err(Error::ConfluentMode);
    }
    let base1 = symbol_kernel_vector(s, z1, lambda)?;
    let base2 = symbol_kernel_vector(s, z2, lambda)?;
    let mode1 = quasiperiodic_extension(&base1, z1, m_render)?;
    let mode2 = quasiperiodic_extension(&base2, z2, m_render)?;
    let r1 = first_row_residual(s, lambda, &mode1, C64::new(0.0, 0.0));
    let r2 = first_row_residual(s, lambda, &mode2, C64::new(0.0, 0.0));
    let (mut gamma1, mut gamma2) = if r1.norm() == 0.0 && r2.norm() == 0.0 {
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    } else {
        (r2, -r1)
    };
    let scale = gamma1.norm().max(gamma2.norm());
    gamma1 /= scale;
    gamma2 /= scale;
    let samples: Vec<C64> = mode1
        .samples
        .iter()
        .zip(&mode2.samples)
        .map(|(u, v)| gamma1 * u + gamma2 * v)
        .collect();
    let residual = row_residual(s, lambda, &samples, C64::new(0.0, 0.0));
    Ok(SymbolicEigenvector {
        coefficients: (gamma1, gamma2),
        quasiperiodicities: (q1, q2),
        modes: (mode1, mode2),
        samples,
        residual,
    })
}

/// Unit-norm kernel vector of a(z) − λ.
fn symbol_kernel_vector(s: &SymbolCoefficients, z: C64, lambda: C64) -> Result<Vec<C64>, Error> {
    let matrix = s.evaluate(z)?;
    inverse_iteration(&matrix, lambda)
}

/// First-row residual of (T(a) − λ) applied to a quasiperiodic extension,
/// with an optional perturbation of the (1,1) entry. Only the first two
/// amplitudes enter: (a_1 + shift − λ) u_1 + b_1 u_2.
pub fn first_row_residual(
    s: &SymbolCoefficients,
    lambda: C64,
    mode: &QuasiperiodicMode,
    corner_shift: C64,
) -> C64 {
    let u1 = mode.samples[0];
    let u2 = if s.k() >= 2 { mode.samples[1] } else { mode.samples[0] / mode.z };
    (s.diag()[0] + corner_shift - lambda) * u1 + s.upper()[0] * u2
}

/// Max residual of (T(a) − λ) u over all rows except the truncation tail,
/// relative to amplitude times coefficient scale. An optional shift perturbs
/// the (1,1) entry.
pub fn row_residual(s: &SymbolCoefficients, lambda: C64, u: &[C64], corner_shift: C64) -> f64 {
    let k = s.k();
    let n = u.len();
    assert!(n >= 2 && n % k == 0, "amplitude length must be a positive multiple of k");
    let row_scale: f64 = (0..k)
        .map(|i| s.diag()[i].norm() + s.upper()[i].norm() + s.lower()[i].norm())
        .fold(0.0, f64::max)
        + lambda.norm()
        + corner_shift.norm();
    let amp = u.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if amp == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for i in 0..n - 1 {
        let mut acc = (s.diag()[i % k] - lambda) * u[i] + s.upper()[i % k] * u[i + 1];
        if i > 0 {
            acc += s.lower()[(i - 1) % k] * u[i - 1];
        } else {
            acc += corner_shift * u[0];
        }
        worst = worst.max(acc.norm());
    }
    worst / (amp * row_scale.max(1.0))
}

/// Least-squares decay rate per unit cell with fit quality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Fitted decay rate per cell: amplitudes shrink like e^{−β·j}.
    pub beta: f64,
    /// RMS residual of the log-magnitude fit.
    pub residual: f64,
    pub cells_used: usize,
}

/// Fit the per-cell decay rate of an amplitude vector of `len = m·k` sites:
/// the slope of ln(max cell magnitude) against the cell index over the middle
/// 50% of cells (boundary layers at both ends excluded).
pub fn decay_rate(u: &[C64], k: usize) -> Result<DecayFit, Error> {
    if k == 0 || u.len() % k != 0 {
        return Err(Error::invalid("amplitude length must be divisible by the cell size"));
    }
    let cells = u.len() / k;
    if cells < 4 {
        return Err(Error::invalid("decay fit needs at least 4 cells"));
    }
    let start = cells / 4;
    let end = cells - cells / 4;
    let mut xs = Vec::with_capacity(end - start);
    let mut ys = Vec::with_capacity(end - start);
    for j in start..end {
        let magnitude = u[j * k..(j + 1) * k].iter().map(|v| v.norm()).fold(0.0, f64::max);
        if magnitude == 0.0 {
            return Err(Error::ZeroCellWindow);
        }
        xs.push(j as f64);
        ys.push(magnitude.ln());
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (mean_y + slope * (x - mean_x))).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(DecayFit { beta: -slope, residual, cells_used: xs.len() })
}

/// Eigenvector of the finite open-boundary matrix T_{mk}(a) at a known
/// eigenvalue, by inverse iteration on the directly assembled matrix.
/// Reliable for m·k up to a few dozen; beyond that the symmetrizer-based
/// rescaling of collapsed eigenvectors is the stable alternative.
pub fn finite_obc_mode(s: &SymbolCoefficients, m: usize, lambda: C64) -> Result<Vec<C64>, Error> {
    let lattice = toeplitz_matrix(s, m)?;
    inverse_iteration(&lattice.matrix, lambda)
}

/// Verify that the eigenspace of a tridiagonal matrix with nonzero
/// off-diagonals is one-dimensional at λ: rebuild the eigenvector from
/// u_1 = 1 by the three-term recursion and test collinearity with the
/// inverse-iteration eigenvector.
pub fn eigenspace_dimension_check(
    matrix: &DenseComplexMatrix,
    lambda: C64,
) -> Result<bool, Error> {
    let n = matrix.order();
    if n < 2 {
        return Err(Error::invalid("eigenspace check needs order >= 2"));
    }
    for i in 0..n {
        for j in 0..n {
            let far = i.abs_diff(j) > 1;
            if far && matrix[(i, j)].norm() != 0.0 {
                return Err(Error::invalid("eigenspace check requires a tridiagonal matrix"));
            }
            if i.abs_diff(j) == 1 && matrix[(i, j)].norm() == 0.0 {
                return Err(Error::invalid("eigenspace check requires nonzero off-diagonals"));
            }
        }
    }
    let mut recursion = vec![C64::new(0.0, 0.0); n];
    recursion[0] = C64::new(1.0, 0.0);
    recursion[1] = (lambda - matrix[(0, 0)]) * recursion[0] / matrix[(0, 1)];
    for i in 1..n - 1 {
        let value = ((lambda - matrix[(i, i)]) * recursion[i]
            - matrix[(i, i - 1)] * recursion[i - 1])
            / matrix[(i, i + 1)];
        recursion[i + 1] = value;
        // keep the linear recursion in range; rescaling all entries preserves it
        let magnitude = value.norm();
        if magnitude > 1e120 {
            for entry in recursion.iter_mut().take(i + 2) {
                *entry /= magnitude;
            }
        }
    }
    let direct = inverse_iteration(matrix, lambda)?;
    let dot: C64 = direct.iter().zip(&recursion).map(|(a, b)| a.conj() * b).sum();
    let norm_r: f64 = recursion.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let collinearity = dot.norm() / norm_r;
    Ok(collinearity > 1.0 - 1e-8)
}
