//! Error type shared by all modules.

use crate::C64;

/// Failures surfaced by the spectral toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on user-supplied parameters failed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A matrix contained NaN or infinite entries.
    #[error("non-finite entries in {context}")]
    NonFinite { context: &'static str },

    /// QR iteration did not converge within the iteration cap.
    #[error("eigensolver failed to converge for order {order} (last subdiagonal residual {residual:.3e})")]
    EigenNonConvergence { order: usize, residual: f64 },

    /// Singular-value bisection failed to bracket a value.
    #[error("singular-value solver failed to converge for order {order}")]
    SingularValueNonConvergence { order: usize },

    /// `solve_quadratic` called with a vanishing leading coefficient.
    #[error("degenerate quadratic: leading coefficient is zero")]
    DegenerateQuadratic,

    /// A symbol or extension was evaluated at z = 0.
    #[error("symbol evaluation at z = 0")]
    ZeroEvaluationPoint,

    /// An off-diagonal coefficient is zero, so the generalised-Brillouin-zone
    /// machinery (non-reciprocity rate, ellipse, quasimomenta) is undefined.
    #[error("reciprocal-degenerate symbol: off-diagonal coefficient {index} is zero")]
    ReciprocalDegenerate { index: usize },

    /// Circulant assembly with m = 1 would stack corner and band entries.
    #[error("corner collision: circulant assembly requires at least 2 unit cells")]
    CornerCollision,

    /// The symmetrizer diagonal would overflow in double precision.
    #[error("overflow guard: symmetrizer magnitude reaches e^{log_magnitude:.1}; use the collapsed symbol instead")]
    SymmetrizerOverflow { log_magnitude: f64 },

    /// λ lies on the symbol curve within the boundary tolerance, so its
    /// winding number is undefined.
    #[error("point {lambda} lies on the determinantal spectrum within tolerance")]
    OnBoundary { lambda: C64 },

    /// Winding refinement exceeded the sample cap without meeting the
    /// phase-step criterion.
    #[error("winding refinement cap exceeded at {n_points} samples")]
    WindingRefinementCap { n_points: usize },

    /// Quasimomentum location requested for a point outside the spectrum.
    #[error("point {lambda} is exterior to the Toeplitz-operator spectrum")]
    ExteriorPoint { lambda: C64 },

    /// Two independent routes disagreed beyond tolerance.
    #[error("internal consistency failure: {context}")]
    InternalConsistency { context: String },

    /// Mode construction at a confluent quasimomentum pair is unsupported.
    #[error("confluent mode: the two quasiperiodicities coincide")]
    ConfluentMode,

    /// Decay fit window contained a cell of all-zero amplitudes.
    #[error("decay fit window contains an all-zero cell")]
    ZeroCellWindow,

    /// Hausdorff distance of an empty spectral set.
    #[error("empty spectral set")]
    EmptySpectralSet,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::InternalConsistency { context: msg.into() }
    }
}
