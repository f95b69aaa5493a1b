//! Spectral analysis of tridiagonal k-Toeplitz operators and matrices.
//!
//! Non-reciprocal lattice models (unequal forward/backward couplings) are
//! described by tridiagonal k-Toeplitz matrices (finite chains), k-Toeplitz
//! operators (semi-infinite chains) and k-Laurent operators (bi-infinite
//! chains). Their spectra no longer coincide: eigenmodes condense on one edge
//! and decay exponentially, and the three natural spectral limits — open
//! boundary, periodic boundary, pseudospectral — separate.
//!
//! This crate computes all of them from the k×k matrix symbol
//!
//! ```text
//!           ┌ a_1  b_1            c_k z   ┐
//!           │ c_1  a_2  b_2               │
//! a(z)  =   │         ...  ...            │
//!           │           c_{k-2} a_{k-1} b_{k-1}
//!           └ b_k z⁻¹           c_{k-1} a_k ┘
//! ```
//!
//! * [`symbol`] — symbol evaluation, determinant split into a scalar Laurent
//!   part plus a λ-polynomial, ellipse geometry and the non-reciprocity rate.
//! * [`lattice`] — finite Toeplitz/circulant assemblies, the diagonal
//!   symmetrizer and the collapsed (reciprocal) symbol.
//! * [`gbz`] — spectral classification, winding numbers, quasimomentum
//!   location and sampling of the Toeplitz-operator spectrum over the
//!   generalised Brillouin zone.
//! * [`limits`] — open, periodic and pseudospectral limits, Hausdorff
//!   distances and convergence studies.
//! * [`modes`] — quasiperiodic eigenmode construction and decay-rate fits.
//! * [`linalg`] — self-contained dense complex kernel (eigenvalues via
//!   Hessenberg + shifted QR, smallest singular values, quadratic roots).
//!
//! Grid and sweep computations are data-parallel; the `parallel` feature
//! (enabled by default) runs them on a rayon pool. Disable default features
//! for a fully sequential build. Thread count can be overridden with the
//! `RAYON_NUM_THREADS` environment variable. Results are deterministic in
//! either mode: grid order is fixed.

pub mod error;
pub mod gbz;
pub mod lattice;
pub mod limits;
pub mod linalg;
pub mod modes;
pub mod spectral_set;
pub mod symbol;

pub(crate) mod exec;
pub(crate) mod util;

pub use error::Error;
pub use gbz::{
    classify, locate_quasiperiodicities, toeplitz_spectrum_sample, winding_number,
    GeneralisedBrillouinZone, SpectralClassification,
};
pub use lattice::{circulant_matrix, collapsed_symbol, symmetrizer, toeplitz_matrix, FiniteLattice};
pub use limits::{
    convergence_study, finite_obc_spectrum, hausdorff_distance, laurent_spectrum_sample,
    obc_limit_set, pbc_spectrum, pseudospectrum_grid, ConvergenceRow, ConvergenceTargets,
    HausdorffDistance, ObcRoute, PseudospectrumGrid, Rectangle,
};
pub use linalg::{eig_dense, smallest_singular_value, solve_quadratic, DenseComplexMatrix, EigenResult};
pub use modes::{
    decay_rate, eigenspace_dimension_check, finite_obc_mode, quasiperiodic_extension,
    symbolic_eigenvector, DecayFit, QuasiperiodicMode, SymbolicEigenvector,
};
pub use spectral_set::{SourceTag, SpectralPoint, SpectralSet};
pub use symbol::{EllipseGeometry, Membership, Quasiperiodicity, SymbolCoefficients};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
