//! The three spectral limits of a non-reciprocal lattice and their
//! convergence diagnostics.
//!
//! Open boundary: σ(T_{mk}(a)) converges to the symbol spectrum on the
//! shifted zone β = Δ/2. Periodic boundary: σ(C_{mk}(a)) decomposes exactly
//! over the m-th roots of unity and converges to the Laurent spectrum.
//! Pseudospectral: σ_min(T_{mk}(a) − λ) decays exponentially inside the
//! winding region and stays bounded below outside, insensitive to boundary
//! conditions.

use crate::exec::map_indexed;
use crate::lattice::{circulant_matrix, collapsed_symbol, toeplitz_matrix};
use crate::linalg::{eig_dense, smallest_singular_value};
use crate::spectral_set::{SourceTag, SpectralSet};
use crate::symbol::{Quasiperiodicity, SymbolCoefficients};
use crate::{C64, Error};
use std::f64::consts::PI;

/// Open-boundary eigenvalues above this order run through the collapsed
/// similarity by default; direct non-normal eigensolves become unreliable.
const DIRECT_OBC_ORDER_LIMIT: usize = 20;

/// Route selection for finite open-boundary spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ObcRoute {
    /// Collapse whenever mk exceeds the reliable direct order.
    #[default]
    Auto,
    /// Eigenvalues of T_{mk}(a) as assembled; exposes the floating-point
    /// pseudospectrum drift of non-normal truncations.
    Direct,
    /// Eigenvalues of the exactly similar T_{mk}(ã).
    Collapse,
}

/// Eigenvalues of the finite open-boundary matrix T_{mk}(a).
pub fn finite_obc_spectrum(
    s: &SymbolCoefficients,
    m: usize,
    route: ObcRoute,
) -> Result<SpectralSet, Error> {
    if m == 0 {
        return Err(Error::invalid("finite_obc_spectrum requires m >= 1"));
    }
    let use_collapse = match route {
        ObcRoute::Auto => m * s.k() > DIRECT_OBC_ORDER_LIMIT,
        ObcRoute::Direct => false,
        ObcRoute::Collapse => true,
    };
    let assembly = if use_collapse {
        toeplitz_matrix(&collapsed_symbol(s)?, m)?
    } else {
        toeplitz_matrix(s, m)?
    };
    let eigenvalues = eig_dense(&assembly.matrix, false)?.eigenvalues;
    let mut set = SpectralSet::default();
    for value in eigenvalues {
        set.push(value, SourceTag::FiniteObc { m });
    }
    Ok(set)
}

/// Spectrum of the circulant C_{mk}(a) through the exact block decomposition
/// ∪_{j=0}^{m−1} σ(a(e^{2πij/m})); never assembles the mk×mk matrix.
pub fn pbc_spectrum(s: &SymbolCoefficients, m: usize) -> Result<SpectralSet, Error> {
    if m < 2 {
        return Err(Error::invalid("pbc_spectrum requires m >= 2"));
    }
    let blocks = map_indexed(m, |j| {
        let z = C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
        let matrix = s.evaluate(z).expect("roots of unity are nonzero");
        eig_dense(&matrix, false).expect("finite symbol block").eigenvalues
    });
    let mut set = SpectralSet::default();
    for eigenvalues in blocks {
        for value in eigenvalues {
            set.push(value, SourceTag::FinitePbc { m });
        }
    }
    Ok(set)
}

/// Sample of the Laurent-operator spectrum: symbol eigenvalues over the real
/// quasimomentum grid (β = 0).
pub fn laurent_spectrum_sample(
    s: &SymbolCoefficients,
    n_alpha: usize,
) -> Result<SpectralSet, Error> {
    sample_at_level(s, n_alpha, 0.0, |alpha, _| SourceTag::LaurentSample { alpha })
}

/// The open-boundary limit: symbol eigenvalues over the α-grid at the shifted
/// level β = Δ/(2L). Equals the spectrum of the collapsed symbol on the
/// classical zone through the one-cell diagonal similarity.
pub fn obc_limit_set(s: &SymbolCoefficients, n_alpha: usize) -> Result<SpectralSet, Error> {
    s.require_nonzero_off_diagonals()?;
    let geometry = s.ellipse_geometry()?;
    let shift = geometry.delta / 2.0 / s.spatial_period();
    sample_at_level(s, n_alpha, shift, |alpha, beta| SourceTag::ObcLimit { alpha, beta })
}

fn sample_at_level(
    s: &SymbolCoefficients,
    n_alpha: usize,
    beta: f64,
    tag: impl Fn(f64, f64) -> SourceTag,
) -> Result<SpectralSet, Error> {
    if n_alpha < 16 {
        return Err(Error::invalid(format!("spectral sampling requires n_alpha >= 16, got {n_alpha}")));
    }
    let period = s.spatial_period();
    let chunks = map_indexed(n_alpha, |j| {
        let alpha = (-PI + 2.0 * PI * j as f64 / n_alpha as f64) / period;
        let z = Quasiperiodicity::new(alpha, beta).associated_point(period);
        let matrix = s.evaluate(z).expect("grid points are nonzero");
        (alpha, eig_dense(&matrix, false).expect("finite symbol block").eigenvalues)
    });
    let mut set = SpectralSet::default();
    for (alpha, eigenvalues) in chunks {
        for value in eigenvalues {
            set.push(value, tag(alpha, beta));
        }
    }
    Ok(set)
}

/// Complex bounding box for pseudospectrum sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rectangle {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self, Error> {
        if !(re_min < re_max && im_min < im_max)
            || ![re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite())
        {
            return Err(Error::invalid("rectangle must be nondegenerate and finite"));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }
}

/// σ_min(T_{mk}(a) − λ) sampled on a grid; ε-level pseudospectra are the
/// sub-level sets of this field.
#[derive(Debug, Clone)]
pub struct PseudospectrumGrid {
    pub rectangle: Rectangle,
    pub nx: usize,
    pub ny: usize,
    pub m: usize,
    /// Row-major with x fastest: values[iy * nx + ix].
    pub values: Vec<f64>,
}

impl PseudospectrumGrid {
    /// Grid point at (ix, iy).
    pub fn lambda_at(&self, ix: usize, iy: usize) -> C64 {
        let x = self.rectangle.re_min
            + (self.rectangle.re_max - self.rectangle.re_min) * ix as f64 / (self.nx - 1) as f64;
        let y = self.rectangle.im_min
            + (self.rectangle.im_max - self.rectangle.im_min) * iy as f64 / (self.ny - 1) as f64;
        C64::new(x, y)
    }

    pub fn value_at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.nx + ix]
    }
}

/// Sweep σ_min(T_{mk}(a) − λ) over the rectangle at the given resolution
/// (at least 16×16).
pub fn pseudospectrum_grid(
    s: &SymbolCoefficients,
    m: usize,
    rectangle: Rectangle,
    resolution: (usize, usize),
) -> Result<PseudospectrumGrid, Error> {
    let (nx, ny) = resolution;
    if nx < 16 || ny < 16 {
        return Err(Error::invalid(format!("pseudospectrum resolution must be at least 16x16, got {nx}x{ny}")));
    }
    let lattice = toeplitz_matrix(s, m)?;
    let grid = PseudospectrumGrid { rectangle, nx, ny, m, values: Vec::new() };
    let results = map_indexed(nx * ny, |idx| {
        let (iy, ix) = (idx / nx, idx % nx);
        let lambda = grid.lambda_at(ix, iy);
        smallest_singular_value(&lattice.matrix.shifted(lambda))
    });
    let mut values = Vec::with_capacity(nx * ny);
    for (idx, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => values.push(v),
            Err(e) => {
                let (iy, ix) = (idx / nx, idx % nx);
                return Err(Error::inconsistent(format!(
                    "pseudospectrum solve failed at grid cell ({ix}, {iy}): {e}"
                )));
            }
        }
    }
    Ok(PseudospectrumGrid { values, ..grid })
}

/// Hausdorff distance together with both directed components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HausdorffDistance {
    pub distance: f64,
    /// sup over the first set of the distance to the second.
    pub directed_forward: f64,
    /// sup over the second set of the distance to the first.
    pub directed_backward: f64,
}

/// Hausdorff distance between two nonempty point sets.
pub fn hausdorff_distance(
    first: &SpectralSet,
    second: &SpectralSet,
) -> Result<HausdorffDistance, Error> {
    let a = first.values();
    let b = second.values();
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySpectralSet);
    }
    let forward = directed_hausdorff(&a, &b);
    let backward = directed_hausdorff(&b, &a);
    Ok(HausdorffDistance {
        distance: forward.max(backward),
        directed_forward: forward,
        directed_backward: backward,
    })
}

fn directed_hausdorff(from: &[C64], to: &[C64]) -> f64 {
    let per_point = map_indexed(from.len(), |i| {
        let x = from[i];
        to.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min)
    });
    per_point.into_iter().fold(0.0, f64::max)
}

/// Which convergence columns to fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvergenceTargets {
    pub obc: bool,
    pub pbc: bool,
}

impl Default for ConvergenceTargets {
    fn default() -> Self {
        Self { obc: true, pbc: true }
    }
}

/// One row of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub m: usize,
    /// Directed Hausdorff distance σ(T_{mk}(a)) → open-boundary limit sample.
    pub d_obc_directed: Option<f64>,
    /// Discretization bound of the limit sample: the largest gap between
    /// spectra at adjacent grid quasimomenta.
    pub d_obc_sampling_bound: Option<f64>,
    /// Hausdorff distance between σ(C_{mk}(a)) and the Laurent sample. The
    /// circulant spectrum lies exactly on the Laurent curve, so the forward
    /// direction only sees sampling error; the backward direction carries the
    /// convergence of the roots of unity to the full circle.
    pub d_pbc: Option<f64>,
}

/// Directed Hausdorff distances from finite spectra to their limit sets over
/// an increasing list of unit-cell counts. Open-boundary spectra run through
/// the collapsed similarity; periodic spectra through the exact block
/// decomposition. Limit curves are sampled with `n_limit` quasimomenta and
/// the sampling bound is reported alongside.
pub fn convergence_study(
    s: &SymbolCoefficients,
    m_list: &[usize],
    targets: ConvergenceTargets,
    n_limit: usize,
) -> Result<Vec<ConvergenceRow>, Error> {
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("convergence_study requires a strictly increasing m list"));
    }
    let obc_limit = if targets.obc { Some(obc_limit_set(s, n_limit)?) } else { None };
    let obc_bound = obc_limit.as_ref().map(|set| sampling_bound(set, s.k()));
    let laurent = if targets.pbc {
        let mut set = laurent_spectrum_sample(s, n_limit)?;
        for point in &mut set.points {
            if let SourceTag::LaurentSample { alpha } = point.source {
                point.source = SourceTag::PbcLimit { alpha };
            }
        }
        Some(set)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let (d_obc, d_pbc) = (
            match &obc_limit {
                Some(limit) => {
                    let finite = finite_obc_spectrum(s, m, ObcRoute::Collapse)?;
                    Some(hausdorff_distance(&finite, limit)?.directed_forward)
                }
                None => None,
            },
            match &laurent {
                Some(limit) => {
                    let finite = pbc_spectrum(s, m)?;
                    Some(hausdorff_distance(&finite, limit)?.distance)
                }
                None => None,
            },
        );
        rows.push(ConvergenceRow {
            m,
            d_obc_directed: d_obc,
            d_obc_sampling_bound: obc_bound,
            d_pbc,
        });
    }
    Ok(rows)
}

/// Largest gap between the k-point spectra of adjacent grid quasimomenta
/// (wrapping around), a conservative bound on how far any point of the
/// continuum limit curve can lie from the sample.
pub fn sampling_bound(set: &SpectralSet, k: usize) -> f64 {
    let values = set.values();
    let slices = values.len() / k;
    if slices < 2 {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for j in 0..slices {
        let current = &values[j * k..(j + 1) * k];
        let next_start = ((j + 1) % slices) * k;
        let next = &values[next_start..next_start + k];
        for x in current {
            let nearest = next.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbz::{classify, SpectralClassification};
    use crate::lattice::symmetrizer;
    use crate::linalg::DenseComplexMatrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn prototype() -> SymbolCoefficients {
        SymbolCoefficients::new(
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(-2.0, 0.0), c(1.0, 0.0)],
            vec![c(-0.9, 0.0), c(-0.1, 0.0)],
        )
        .unwrap()
    }

    fn hermitian_symbol() -> SymbolCoefficients {
        SymbolCoefficients::new(
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 1.0), c(2.0, 0.0)],
            vec![c(1.0, -1.0), c(2.0, 0.0)],
        )
        .unwrap()
    }

    fn hatano_nelson() -> SymbolCoefficients {
        SymbolCoefficients::new(vec![c(0.0, 0.0)], vec![c(2.0, 0.0)], vec![c(0.5, 0.0)]).unwrap()
    }

    fn matching_distance(a: &[C64], b: &[C64]) -> f64 {
        assert_eq!(a.len(), b.len());
        let mut used = vec![false; b.len()];
        let mut worst = 0.0f64;
        for x in a {
            let (mut best, mut best_j) = (f64::INFINITY, usize::MAX);
            for (j, y) in b.iter().enumerate() {
                if !used[j] && (x - y).norm() < best {
                    best = (x - y).norm();
                    best_j = j;
                }
            }
            used[best_j] = true;
            worst = worst.max(best);
        }
        worst
    }

    #[test]
    fn scalar_obc_limit_is_a_real_interval() {
        // b = 2, c = 1/2: shifted couplings both become 1
        let set = obc_limit_set(&hatano_nelson(), 64).unwrap();
        for p in &set.points {
            assert!(p.value.im.abs() < 1e-12);
            assert!(p.value.re.abs() <= 2.0 + 1e-12);
        }
        // endpoints approached by the grid
        let max_re = set.points.iter().map(|p| p.value.re).fold(f64::NEG_INFINITY, f64::max);
        assert!(max_re > 1.99);
    }

    #[test]
    fn negative_rate_symbol_mirrors_the_zone() {
        // b = 1/2, c = 2 has Δ = −ln 4; the limit interval is unchanged
        let s = SymbolCoefficients::new(vec![c(0.0, 0.0)], vec![c(0.5, 0.0)], vec![c(2.0, 0.0)])
            .unwrap();
        let set = obc_limit_set(&s, 64).unwrap();
        for p in &set.points {
            assert!(p.value.im.abs() < 1e-12);
            assert!(p.value.re.abs() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn degenerate_symbol_obc_limit_equals_laurent_sample() {
        let s = hermitian_symbol();
        let obc = obc_limit_set(&s, 32).unwrap();
        let laurent = laurent_spectrum_sample(&s, 32).unwrap();
        assert!(matching_distance(&obc.values(), &laurent.values()) < 1e-12);
    }

    #[test]
    fn one_cell_similarity_identity_in_branch_consistent_form() {
        // D⁻¹ ã(w) D = a(w · t) entrywise, with t = √(∏b/∏c) on the principal
        // branch and the collapsed off-diagonals taken branch-consistently:
        // s_i = b_i / √(b_i/c_i) for i < k and s_k = c_k · t / ∏_{i<k} √(b_i/c_i).
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let s = prototype();
        let k = s.k();
        let d = symmetrizer(&s, 1).unwrap();
        let ratio_roots: Vec<C64> = (0..k)
            .map(|i| crate::util::principal_sqrt(s.upper()[i] / s.lower()[i]))
            .collect();
        let t = crate::util::principal_sqrt(
            s.upper_product() / s.lower_product(),
        );
        let mut offdiag: Vec<C64> = (0..k - 1).map(|i| s.upper()[i] / ratio_roots[i]).collect();
        let chain: C64 = ratio_roots[..k - 1].iter().product();
        offdiag.push(s.lower()[k - 1] * t / chain);
        let tilde = SymbolCoefficients::new(s.diag().to_vec(), offdiag.clone(), offdiag).unwrap();
        for _ in 0..100 {
            let alpha = rng.gen_range(-PI..PI);
            let w = C64::from_polar(1.0, -alpha);
            let lhs = tilde.evaluate(w).unwrap();
            let rhs = s.evaluate(w * t).unwrap();
            let mut conjugated = DenseComplexMatrix::zeros(k);
            for i in 0..k {
                for j in 0..k {
                    conjugated[(i, j)] = lhs[(i, j)] * d[j] / d[i];
                }
            }
            for i in 0..k {
                for j in 0..k {
                    let diff = (conjugated[(i, j)] - rhs[(i, j)]).norm();
                    assert!(diff < 1e-12 * rhs.frobenius_norm().max(1.0), "entry ({i},{j}) off by {diff}");
                }
            }
        }
    }

    #[test]
    fn obc_limit_matches_collapsed_unit_circle_sample() {
        // the same set arises from ã on the classical zone; grids differ by a
        // rigid rotation of the circle, so compare as sets
        let s = prototype();
        let n = 256;
        let direct = obc_limit_set(&s, n).unwrap();
        let collapsed = collapsed_symbol(&s).unwrap();
        let tilde_sample = laurent_spectrum_sample(&collapsed, n).unwrap();
        let d = hausdorff_distance(&direct, &tilde_sample).unwrap();
        let bound = sampling_bound(&direct, s.k());
        assert!(d.distance <= bound, "distance {} exceeds sampling bound {bound}", d.distance);
    }

    #[test]
    fn pbc_block_identity_against_dense_eigensolve() {
        let s = prototype();
        for m in [4usize, 10] {
            let blocks = pbc_spectrum(&s, m).unwrap();
            let dense = eig_dense(&circulant_matrix(&s, m).unwrap().matrix, false)
                .unwrap()
                .eigenvalues;
            assert!(matching_distance(&blocks.values(), &dense) < 1e-8, "m = {m}");
        }
    }

    #[test]
    fn scalar_pbc_values() {
        let s = SymbolCoefficients::new(vec![c(0.7, 0.0)], vec![c(2.0, 0.0)], vec![c(0.5, 0.0)])
            .unwrap();
        let m = 5;
        let set = pbc_spectrum(&s, m).unwrap();
        let oracle: Vec<C64> = (0..m)
            .map(|j| {
                let w = C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
                c(0.7, 0.0) + 0.5 * w + 2.0 / w
            })
            .collect();
        assert!(matching_distance(&set.values(), &oracle) < 1e-12);
    }

    #[test]
    fn pbc_spectrum_converges_to_laurent_sample() {
        let s = prototype();
        let laurent = laurent_spectrum_sample(&s, 4096).unwrap();
        let mut previous = f64::INFINITY;
        for m in [8usize, 32, 128] {
            let d = hausdorff_distance(&pbc_spectrum(&s, m).unwrap(), &laurent).unwrap();
            // circulant spectra sit exactly on the Laurent curve
            assert!(d.directed_forward < 2e-2, "circulant point strayed off the curve");
            assert!(d.distance < previous, "distance did not decrease at m = {m}");
            previous = d.distance;
        }
    }

    #[test]
    fn scalar_laurent_sample_is_the_classical_band() {
        let s = SymbolCoefficients::new(vec![c(0.0, 0.0)], vec![c(1.0, 0.0)], vec![c(1.0, 0.0)])
            .unwrap();
        let set = laurent_spectrum_sample(&s, 64).unwrap();
        for p in &set.points {
            assert!(p.value.im.abs() < 1e-14 && p.value.re.abs() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn finite_obc_routes_agree_at_small_order() {
        let s = prototype();
        let direct = finite_obc_spectrum(&s, 10, ObcRoute::Direct).unwrap();
        let collapsed = finite_obc_spectrum(&s, 10, ObcRoute::Collapse).unwrap();
        assert!(matching_distance(&direct.values(), &collapsed.values()) < 1e-6);
    }

    #[test]
    fn scalar_obc_spectrum_closed_form() {
        // (2√(bc)) cos(jπ/(n+1)) for tridiagonal Toeplitz matrices
        let set = finite_obc_spectrum(&hatano_nelson(), 100, ObcRoute::Auto).unwrap();
        let mut got: Vec<f64> = set.points.iter().map(|p| p.value.re).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut expect: Vec<f64> =
            (1..=100).map(|j| 2.0 * (j as f64 * PI / 101.0).cos()).collect();
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, e) in got.iter().zip(&expect) {
            assert!((g - e).abs() < 1e-6, "{g} vs {e}");
        }
    }

    #[test]
    fn pseudospectrum_far_field_lower_bound() {
        // |λ| = 10: σ_min(T − λ) ≥ min|diag| − √(row · col off-diagonal sums)
        let s = prototype();
        let lattice = toeplitz_matrix(&s, 10).unwrap();
        let lambda = c(10.0, 0.0);
        let shifted = lattice.matrix.shifted(lambda);
        let n = shifted.order();
        let mut min_diag = f64::INFINITY;
        let mut max_row = 0.0f64;
        let mut max_col = 0.0f64;
        for i in 0..n {
            min_diag = min_diag.min(shifted[(i, i)].norm());
            let mut row = 0.0;
            let mut col = 0.0;
            for j in 0..n {
                if i != j {
                    row += shifted[(i, j)].norm();
                    col += shifted[(j, i)].norm();
                }
            }
            max_row = max_row.max(row);
            max_col = max_col.max(col);
        }
        let oracle_bound = min_diag - (max_row * max_col).sqrt();
        assert!(oracle_bound > 5.0);
        let sigma = smallest_singular_value(&shifted).unwrap();
        assert!(sigma >= oracle_bound - 1e-9, "σ_min {sigma} below bound {oracle_bound}");
    }

    #[test]
    fn pseudospectrum_decays_inside_the_winding_region() {
        let s = prototype();
        let mut previous = f64::INFINITY;
        for m in [5usize, 10, 20] {
            let sigma = smallest_singular_value(
                &toeplitz_matrix(&s, m).unwrap().matrix.shifted(c(0.0, 0.0)),
            )
            .unwrap();
            assert!(sigma < previous, "σ_min did not decrease at m = {m}");
            previous = sigma;
        }
    }

    #[test]
    fn hermitian_pseudospectrum_equals_distance_to_spectrum() {
        let s = hermitian_symbol();
        let m = 5;
        let lattice = toeplitz_matrix(&s, m).unwrap();
        let spectrum = eig_dense(&lattice.matrix, false).unwrap().eigenvalues;
        for lambda in [c(0.3, 0.4), c(-1.0, 0.1), c(2.0, -0.5)] {
            let sigma = smallest_singular_value(&lattice.matrix.shifted(lambda)).unwrap();
            let dist = spectrum.iter().map(|ev| (ev - lambda).norm()).fold(f64::INFINITY, f64::min);
            assert!((sigma - dist).abs() < 1e-8, "σ_min {sigma} vs distance {dist}");
        }
    }

    #[test]
    fn pseudospectrum_grid_is_lipschitz() {
        let s = prototype();
        let rect = Rectangle::new(-2.5, 2.5, -1.5, 1.5).unwrap();
        let grid = pseudospectrum_grid(&s, 3, rect, (16, 16)).unwrap();
        let dx = (rect.re_max - rect.re_min) / 15.0;
        let dy = (rect.im_max - rect.im_min) / 15.0;
        for iy in 0..16 {
            for ix in 0..16 {
                let v = grid.value_at(ix, iy);
                assert!(v >= 0.0);
                if ix + 1 < 16 {
                    assert!((v - grid.value_at(ix + 1, iy)).abs() <= dx + 1e-10);
                }
                if iy + 1 < 16 {
                    assert!((v - grid.value_at(ix, iy + 1)).abs() <= dy + 1e-10);
                }
            }
        }
    }

    #[test]
    fn pseudospectrum_grid_rejects_small_resolutions() {
        let rect = Rectangle::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        assert!(pseudospectrum_grid(&prototype(), 2, rect, (8, 16)).is_err());
        assert!(Rectangle::new(1.0, -1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn hausdorff_hand_computed_values() {
        let singleton = SpectralSet::new(vec![crate::spectral_set::SpectralPoint {
            value: c(0.0, 0.0),
            source: SourceTag::FiniteObc { m: 1 },
        }]);
        let mut pair = SpectralSet::default();
        pair.push(c(3.0, 0.0), SourceTag::FiniteObc { m: 1 });
        pair.push(c(0.0, 4.0), SourceTag::FiniteObc { m: 1 });
        let d = hausdorff_distance(&singleton, &pair).unwrap();
        assert!((d.directed_forward - 3.0).abs() < 1e-15);
        assert!((d.directed_backward - 4.0).abs() < 1e-15);
        assert!((d.distance - 4.0).abs() < 1e-15);

        let same = hausdorff_distance(&pair, &pair).unwrap();
        assert_eq!(same.distance, 0.0);

        assert!(matches!(
            hausdorff_distance(&SpectralSet::default(), &pair),
            Err(Error::EmptySpectralSet)
        ));
    }

    #[test]
    fn hausdorff_matches_brute_force_oracle() {
        let s = prototype();
        let finite = finite_obc_spectrum(&s, 10, ObcRoute::Collapse).unwrap();
        let limit = obc_limit_set(&s, 401).unwrap();
        let d = hausdorff_distance(&finite, &limit).unwrap();
        // independent sequential scan
        let a = finite.values();
        let b = limit.values();
        let mut forward = 0.0f64;
        for x in &a {
            let mut best = f64::INFINITY;
            for y in &b {
                best = best.min((x - y).norm());
            }
            forward = forward.max(best);
        }
        assert_eq!(d.directed_forward, forward);
    }

    #[test]
    fn limits_classify_inside_the_operator_spectrum() {
        let s = prototype();
        let laurent = laurent_spectrum_sample(&s, 24).unwrap();
        let obc = obc_limit_set(&s, 24).unwrap();
        for p in laurent.points.iter().chain(&obc.points) {
            assert_ne!(
                classify(&s, p.value).unwrap(),
                SpectralClassification::Exterior,
                "{} fell outside the operator spectrum",
                p.value
            );
        }
    }

    #[test]
    fn boundary_condition_sensitivity() {
        let s = prototype();
        let obc = finite_obc_spectrum(&s, 10, ObcRoute::Collapse).unwrap();
        let pbc = pbc_spectrum(&s, 10).unwrap();
        let d = hausdorff_distance(&obc, &pbc).unwrap();
        assert!(d.distance > 0.5, "OBC/PBC spectra too close: {}", d.distance);
    }

    #[test]
    fn convergence_rows_follow_the_expected_trends() {
        let s = prototype();
        let rows = convergence_study(&s, &[5, 20, 60], ConvergenceTargets::default(), 1001).unwrap();
        assert_eq!(rows.len(), 3);
        let obc: Vec<f64> = rows.iter().map(|r| r.d_obc_directed.unwrap()).collect();
        assert!(obc[0] > obc[1] && obc[1] > obc[2], "OBC distances not decreasing: {obc:?}");
        let pbc: Vec<f64> = rows.iter().map(|r| r.d_pbc.unwrap()).collect();
        assert!(pbc[0] > pbc[2], "PBC distances not trending down: {pbc:?}");
        assert!(rows[0].d_obc_sampling_bound.unwrap() > 0.0);

        // degenerate symbol: both columns settle toward the sampling floor.
        // The strong bond must come first in the cell: with the weak bond
        // first the open chain hosts mid-gap edge states that never approach
        // the band union.
        let h = SymbolCoefficients::new(
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(2.0, 0.0), c(1.0, -1.0)],
        )
        .unwrap();
        assert!(h.is_collapsed().unwrap());
        let rows = convergence_study(&h, &[10, 40, 160], ConvergenceTargets::default(), 2001).unwrap();
        let bound = rows[0].d_obc_sampling_bound.unwrap();
        for row in &rows {
            assert!(
                row.d_obc_directed.unwrap() <= bound,
                "m = {}: OBC distance {} above sampling bound {bound}",
                row.m,
                row.d_obc_directed.unwrap()
            );
        }
        assert!(rows.last().unwrap().d_pbc.unwrap() <= (10.0 * bound).max(2e-2));
    }

    #[test]
    fn topological_hermitian_chain_keeps_mid_gap_edge_states() {
        // weak bond first: two open-boundary eigenvalues sit in the band gap
        // at distance |s2| - |s1| = 2 - √2 from the bands, independent of m
        let s = hermitian_symbol();
        let rows = convergence_study(&s, &[10, 40], ConvergenceTargets::default(), 1001).unwrap();
        let gap = 2.0 - 2.0f64.sqrt();
        for row in rows {
            let d = row.d_obc_directed.unwrap();
            assert!((d - gap).abs() < 0.05, "edge-state distance {d} strayed from {gap}");
        }
    }

    #[test]
    fn convergence_rejects_unsorted_m() {
        assert!(convergence_study(&prototype(), &[10, 10], ConvergenceTargets::default(), 64)
            .is_err());
    }
}
