//! Tagged collections of spectral points.

use crate::C64;

/// Where a spectral point came from, with the defining parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceTag {
    /// Eigenvalue of the finite open-boundary matrix T_{mk}(a).
    FiniteObc { m: usize },
    /// Eigenvalue of the finite periodic (circulant) matrix C_{mk}(a).
    FinitePbc { m: usize },
    /// Point of the open-boundary limit curve at quasimomentum (α, Δ/2).
    ObcLimit { alpha: f64, beta: f64 },
    /// Point of the periodic-boundary (Laurent) limit used as a target set.
    PbcLimit { alpha: f64 },
    /// Sample of the Laurent-operator spectrum at real quasimomentum α.
    LaurentSample { alpha: f64 },
    /// Sample of the Toeplitz-operator spectrum at quasimomentum α + iβ.
    ToeplitzSample { alpha: f64, beta: f64 },
    /// Point extracted from a pseudospectrum sub-level set at level ε.
    PseudoGrid { epsilon: f64 },
}

impl SourceTag {
    /// Stable name used in emitted datasets.
    pub fn name(&self) -> &'static str {
        match self {
            SourceTag::FiniteObc { .. } => "FiniteOBC",
            SourceTag::FinitePbc { .. } => "FinitePBC",
            SourceTag::ObcLimit { .. } => "OBCLimit",
            SourceTag::PbcLimit { .. } => "PBCLimit",
            SourceTag::LaurentSample { .. } => "LaurentSample",
            SourceTag::ToeplitzSample { .. } => "ToeplitzSample",
            SourceTag::PseudoGrid { .. } => "PseudoGrid",
        }
    }

    /// Up to two numeric parameters (m, (α, β) or ε).
    pub fn parameters(&self) -> (Option<f64>, Option<f64>) {
        match *self {
            SourceTag::FiniteObc { m } | SourceTag::FinitePbc { m } => (Some(m as f64), None),
            SourceTag::ObcLimit { alpha, beta } | SourceTag::ToeplitzSample { alpha, beta } => {
                (Some(alpha), Some(beta))
            }
            SourceTag::PbcLimit { alpha } | SourceTag::LaurentSample { alpha } => {
                (Some(alpha), None)
            }
            SourceTag::PseudoGrid { epsilon } => (Some(epsilon), None),
        }
    }
}

/// One tagged spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub value: C64,
    pub source: SourceTag,
}

/// A finite tagged collection of complex spectral points.
#[derive(Debug, Clone, Default)]
pub struct SpectralSet {
    pub points: Vec<SpectralPoint>,
}

impl SpectralSet {
    pub fn new(points: Vec<SpectralPoint>) -> Self {
        debug_assert!(points
            .iter()
            .all(|p| p.value.re.is_finite() && p.value.im.is_finite()));
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Untagged values.
    pub fn values(&self) -> Vec<C64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn push(&mut self, value: C64, source: SourceTag) {
        self.points.push(SpectralPoint { value, source });
    }
}
