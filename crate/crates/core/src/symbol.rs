//! Tridiagonal k-Toeplitz symbols and their ellipse geometry.
//!
//! A symbol is the k×k matrix function a(z) carrying the three diagonals of
//! the operator plus the two corner terms c_k z and b_k z⁻¹. Its determinant
//! splits as det(a(z) − λ) = ψ(z) + g(λ) where
//! ψ(z) = (−1)^{k+1}((∏c_j) z + (∏b_j) z⁻¹) traces an ellipse on circles
//! around the origin and g is a degree-k polynomial in λ. Everything the
//! generalised Brillouin zone needs — the non-reciprocity rate Δ, the shift ζ,
//! the rotation factor and the semi-axes — derives from the coefficient
//! products.

use crate::linalg::DenseComplexMatrix;
use crate::util::{principal_sqrt, wrap_angle};
use crate::{C64, Error};

/// Coefficients of a tridiagonal k-Toeplitz symbol.
///
/// `diag`, `upper` and `lower` hold a_1..a_k, b_1..b_k and c_1..c_k; b's sit
/// on the superdiagonal, c's on the subdiagonal, and the k-th entries wrap
/// into the corners of a(z). `spatial_period` is the physical unit-cell
/// length; quasimomenta α + iβ are rescaled by it at the API boundary only.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolCoefficients {
    diag: Vec<C64>,
    upper: Vec<C64>,
    lower: Vec<C64>,
    spatial_period: f64,
    reciprocal_degenerate: bool,
}

impl SymbolCoefficients {
    pub fn new(diag: Vec<C64>, upper: Vec<C64>, lower: Vec<C64>) -> Result<Self, Error> {
        let k = diag.len();
        if k == 0 {
            return Err(Error::invalid("symbol requires at least one site per cell"));
        }
        if upper.len() != k || lower.len() != k {
            return Err(Error::invalid(format!(
                "coefficient lists must share length: diag {k}, upper {}, lower {}",
                upper.len(),
                lower.len()
            )));
        }
        for list in [&diag, &upper, &lower] {
            if list.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite { context: "symbol coefficients" });
            }
        }
        let reciprocal_degenerate =
            upper.iter().chain(lower.iter()).any(|z| z.norm() == 0.0);
        Ok(Self { diag, upper, lower, spatial_period: 1.0, reciprocal_degenerate })
    }

    /// Set the physical unit-cell length (default 1).
    pub fn with_spatial_period(mut self, period: f64) -> Result<Self, Error> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::invalid("spatial period must be positive and finite"));
        }
        self.spatial_period = period;
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[C64] {
        &self.diag
    }

    pub fn upper(&self) -> &[C64] {
        &self.upper
    }

    pub fn lower(&self) -> &[C64] {
        &self.lower
    }

    pub fn spatial_period(&self) -> f64 {
        self.spatial_period
    }

    /// True when some off-diagonal coefficient vanishes; generalised
    /// Brillouin-zone operations are rejected in that case.
    pub fn is_reciprocal_degenerate(&self) -> bool {
        self.reciprocal_degenerate
    }

    pub(crate) fn require_nonzero_off_diagonals(&self) -> Result<(), Error> {
        if let Some(index) = self
            .upper
            .iter()
            .chain(self.lower.iter())
            .position(|z| z.norm() == 0.0)
        {
            return Err(Error::ReciprocalDegenerate { index: index % self.k() });
        }
        Ok(())
    }

    /// ∏ b_j.
    pub fn upper_product(&self) -> C64 {
        self.upper.iter().product()
    }

    /// ∏ c_j.
    pub fn lower_product(&self) -> C64 {
        self.lower.iter().product()
    }

    /// (−1)^{k+1}.
    pub(crate) fn parity_sign(&self) -> f64 {
        if self.k() % 2 == 0 {
            -1.0
        } else {
            1.0
        }
    }

    /// Evaluate the k×k symbol matrix at z ≠ 0.
    ///
    /// Contributions accumulate: for k = 1 the single entry is
    /// a_1 + c_1 z + b_1 z⁻¹; for k = 2 the corners stack onto the
    /// off-diagonal cells.
    pub fn evaluate(&self, z: C64) -> Result<DenseComplexMatrix, Error> {
        if z.norm() == 0.0 {
            return Err(Error::ZeroEvaluationPoint);
        }
        let k = self.k();
        let mut m = DenseComplexMatrix::zeros(k);
        for i in 0..k {
            m[(i, i)] += self.diag[i];
        }
        for i in 0..k - 1 {
            m[(i, i + 1)] += self.upper[i];
            m[(i + 1, i)] += self.lower[i];
        }
        m[(0, k - 1)] += self.lower[k - 1] * z;
        m[(k - 1, 0)] += self.upper[k - 1] / z;
        Ok(m)
    }

    /// The z-dependent part of det(a(z) − λ):
    /// (−1)^{k+1}((∏c_j) z + (∏b_j) z⁻¹).
    pub fn laurent_part(&self, z: C64) -> Result<C64, Error> {
        if z.norm() == 0.0 {
            return Err(Error::ZeroEvaluationPoint);
        }
        Ok(self.parity_sign() * (self.lower_product() * z + self.upper_product() / z))
    }

    /// The λ-polynomial g with det(a(z) − λ) = laurent_part(z) + g(λ),
    /// computed from a determinant at the reference point z₀ = 1.
    /// Independence of z₀ is a tested invariant.
    pub fn determinant_polynomial(&self, lambda: C64) -> C64 {
        let reference = C64::new(1.0, 0.0);
        let m = self.evaluate(reference).expect("reference point is nonzero");
        m.shifted(lambda).determinant() - self.laurent_part(reference).expect("nonzero")
    }

    /// Derived ellipse quantities; errors on zero off-diagonals.
    pub fn ellipse_geometry(&self) -> Result<EllipseGeometry, Error> {
        self.require_nonzero_off_diagonals()?;
        let a_plus: f64 = self.upper.iter().map(|z| z.norm()).product();
        let a_minus: f64 = self.lower.iter().map(|z| z.norm()).product();
        let mut rotation = C64::new(self.parity_sign(), 0.0);
        for (b, c) in self.upper.iter().zip(&self.lower) {
            let bc = b * c;
            rotation *= principal_sqrt(bc / bc.norm());
        }
        let ratio: C64 = self
            .upper
            .iter()
            .zip(&self.lower)
            .map(|(b, c)| b / c)
            .product();
        let mut zeta = ratio.arg();
        if zeta >= std::f64::consts::PI {
            zeta = -std::f64::consts::PI;
        }
        let delta = (a_plus / a_minus).ln();
        if !delta.is_finite() {
            return Err(Error::inconsistent(format!("non-finite non-reciprocity rate {delta}")));
        }
        Ok(EllipseGeometry { a_plus, a_minus, rotation, zeta, delta })
    }

    /// True iff the ellipse degenerates at β = 0, equivalently
    /// ∏|b_j| = ∏|c_j|, equivalently Δ = 0 within 1e-12.
    pub fn is_collapsed(&self) -> Result<bool, Error> {
        Ok(self.ellipse_geometry()?.delta.abs() < 1e-12)
    }

    /// z associated with a quasimomentum: e^{−iL(α+iβ)}.
    pub fn associated_point(&self, q: Quasiperiodicity) -> C64 {
        q.associated_point(self.spatial_period)
    }
}

/// Ellipse E traced out by ψ on the unit circle, in factored form
/// ψ(z) = rotation · ψ̃(z e^{−iζ/2}) with ψ̃(w) = a_minus · w + a_plus / w.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipseGeometry {
    /// ∏|b_j|.
    pub a_plus: f64,
    /// ∏|c_j|.
    pub a_minus: f64,
    /// Unit-modulus factor (−1)^{k+1} ∏ √(b_j c_j / |b_j c_j|).
    pub rotation: C64,
    /// Arg ∏(b_j / c_j), reduced to [−π, π).
    pub zeta: f64,
    /// Non-reciprocity rate Δ = ln ∏|b_j / c_j|.
    pub delta: f64,
}

/// Classification of a point against the ellipse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Membership {
    Interior,
    Boundary { tol: f64 },
    Exterior,
}

impl EllipseGeometry {
    /// Semi-axes of the level-β ellipse in the unrotated frame:
    /// (real direction, imaginary direction) =
    /// (a_minus e^β + a_plus e^{−β}, |a_plus e^{−β} − a_minus e^β|).
    /// The imaginary semi-axis vanishes exactly at β = Δ/2.
    pub fn semi_axes(&self, beta: f64) -> (f64, f64) {
        let grow = self.a_minus * beta.exp();
        let shrink = self.a_plus * (-beta).exp();
        (grow + shrink, (shrink - grow).abs())
    }

    /// Classify ξ against the β = 0 ellipse E with boundary tolerance
    /// 1e-9 · (semi-major + semi-minor).
    pub fn membership(&self, xi: C64) -> Membership {
        self.membership_at_level(0.0, xi)
    }

    /// Classify ξ against the level-β ellipse.
    pub fn membership_at_level(&self, beta: f64, xi: C64) -> Membership {
        let (real_axis, imag_axis) = self.semi_axes(beta);
        let tol = 1e-9 * (real_axis + imag_axis);
        let w = xi / self.rotation;
        if imag_axis <= tol {
            // degenerate: segment [-real_axis, real_axis] on the real line
            let on_segment = w.im.abs() <= tol && w.re.abs() <= real_axis + tol;
            return if on_segment { Membership::Boundary { tol } } else { Membership::Exterior };
        }
        let q = (w.re / real_axis).powi(2) + (w.im / imag_axis).powi(2);
        let distance_estimate = (q - 1.0).abs() * real_axis.min(imag_axis) * 0.5;
        if distance_estimate <= tol {
            Membership::Boundary { tol }
        } else if q < 1.0 {
            Membership::Interior
        } else {
            Membership::Exterior
        }
    }

    /// Conjugate quasimomentum sharing the same spectral point:
    /// ((−ζ − α) mod 2π, Δ − β), in spectral units (L = 1).
    pub fn conjugate(&self, alpha: f64, beta: f64) -> (f64, f64) {
        (wrap_angle(-self.zeta - alpha), self.delta - beta)
    }
}

/// Complex quasimomentum α + iβ; β is the decay rate per unit cell.
///
/// The associated point is z = e^{−iL(α+iβ)}, so |z| = e^{Lβ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quasiperiodicity {
    pub alpha: f64,
    pub beta: f64,
}

impl Quasiperiodicity {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    /// z = e^{−iL(α+iβ)} for unit-cell length L.
    pub fn associated_point(&self, spatial_period: f64) -> C64 {
        C64::from_polar(
            (spatial_period * self.beta).exp(),
            -spatial_period * self.alpha,
        )
    }

    /// Recover (α, β) from z: α = −Arg(z)/L wrapped into [−π/L, π/L),
    /// β = ln|z| / L.
    pub fn from_point(z: C64, spatial_period: f64) -> Self {
        Self {
            alpha: wrap_angle(-z.arg()) / spatial_period,
            beta: z.norm().ln() / spatial_period,
        }
    }
}
