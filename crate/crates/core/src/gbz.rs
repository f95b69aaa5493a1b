//! Generalised Brillouin zone: spectral classification, winding numbers,
//! quasimomentum location and Toeplitz-operator spectrum sampling.
//!
//! A point λ belongs to the Toeplitz-operator spectrum exactly when
//! ξ = −g(λ) lies in the closed ellipse E traced by ψ on the unit circle:
//! on ∂E it is a determinantal spectral point, in the interior the
//! determinant curve det(a(S¹) − λ) winds around 0. Each non-exterior λ has
//! exactly two quasimomenta in the zone, related by
//! (α, β) ↦ ((−ζ − α) mod 2π, Δ − β); they are the roots of the quadratic
//! ψ(z) + g(λ) = 0 under z = e^{−i(α+iβ)}.

use crate::exec::map_indexed;
use crate::linalg::{eig_dense, solve_quadratic};
use crate::spectral_set::{SourceTag, SpectralSet};
use crate::symbol::{EllipseGeometry, Membership, Quasiperiodicity, SymbolCoefficients};
use crate::util::{angle_distance, wrap_angle};
use crate::{C64, Error};
use std::f64::consts::PI;

/// Winding samples are doubled until every consecutive phase step stays
/// below π/2 or this cap is reached.
const WINDING_SAMPLE_CAP: usize = 1 << 24;
/// Default sample count for classification-driven winding checks.
const WINDING_DEFAULT_POINTS: usize = 256;
/// A winding total may deviate from an integer by at most this residue.
const WINDING_INTEGER_RESIDUE: f64 = 0.01;

/// The set of admissible complex quasimomenta α + iβ.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralisedBrillouinZone {
    /// [−π/L, π/L).
    pub alpha_range: (f64, f64),
    /// [0, Δ/L] for Δ ≥ 0, [Δ/L, 0] otherwise; degenerates to {0} exactly
    /// when Δ = 0.
    pub beta_range: (f64, f64),
    pub source: EllipseGeometry,
}

/// Zone of a symbol with nonzero off-diagonals.
pub fn generalised_brillouin_zone(
    s: &SymbolCoefficients,
) -> Result<GeneralisedBrillouinZone, Error> {
    let geometry = s.ellipse_geometry()?;
    let period = s.spatial_period();
    let delta_scaled = geometry.delta / period;
    let beta_range = if delta_scaled >= 0.0 { (0.0, delta_scaled) } else { (delta_scaled, 0.0) };
    Ok(GeneralisedBrillouinZone {
        alpha_range: (-PI / period, PI / period),
        beta_range,
        source: geometry,
    })
}

/// How a spectral point relates to the Toeplitz-operator spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralClassification {
    /// det(a(z) − λ) = 0 for some z on the unit circle.
    DetBoundary,
    /// The determinant curve winds around zero; the winding number is nonzero.
    WindingInterior { winding: i32 },
    /// Outside the spectrum; winding zero.
    Exterior,
}

impl SpectralClassification {
    pub fn winding(&self) -> i32 {
        match self {
            SpectralClassification::WindingInterior { winding } => *winding,
            _ => 0,
        }
    }
}

/// Winding number of θ ↦ det(a(e^{iθ}) − λ) around 0, by stepwise phase
/// accumulation with adaptive refinement: samples double until every
/// consecutive phase step is below π/2, and the accumulated total must land
/// within 0.01 of an integer.
pub fn winding_number(
    s: &SymbolCoefficients,
    lambda: C64,
    n_points: usize,
) -> Result<i32, Error> {
    if n_points < 64 {
        return Err(Error::invalid(format!("winding_number requires n_points >= 64, got {n_points}")));
    }
    let geometry = s.ellipse_geometry()?;
    if let Membership::Boundary { .. } = geometry.membership(-s.determinant_polynomial(lambda)) {
        return Err(Error::OnBoundary { lambda });
    }
    let mut n = n_points;
    loop {
        match try_winding(s, lambda, n)? {
            Some(total) => {
                let rounded = total.round();
                if (total - rounded).abs() > WINDING_INTEGER_RESIDUE {
                    return Err(Error::inconsistent(format!(
                        "winding total {total} is not close to an integer"
                    )));
                }
                return Ok(rounded as i32);
            }
            None => {
                n *= 2;
                if n > WINDING_SAMPLE_CAP {
                    return Err(Error::WindingRefinementCap { n_points: n });
                }
            }
        }
    }
}

/// One pass of phase accumulation; `None` when a step reaches π/2.
fn try_winding(s: &SymbolCoefficients, lambda: C64, n: usize) -> Result<Option<f64>, Error> {
    let values = map_indexed(n, |j| {
        let theta = 2.0 * PI * j as f64 / n as f64;
        let z = C64::from_polar(1.0, theta);
        let m = s.evaluate(z).expect("unit circle points are nonzero");
        m.shifted(lambda).determinant()
    });
    let mut total = 0.0;
    for j in 0..n {
        let current = values[j];
        let next = values[(j + 1) % n];
        if current.norm() == 0.0 || next.norm() == 0.0 {
            return Err(Error::OnBoundary { lambda });
        }
        let step = (next / current).arg();
        if step.abs() >= PI / 2.0 {
            return Ok(None);
        }
        total += step;
    }
    Ok(Some(total / (2.0 * PI)))
}

/// Classify λ by testing ξ = −g(λ) against the ellipse; interior points also
/// get their winding number, which must be nonzero.
pub fn classify(s: &SymbolCoefficients, lambda: C64) -> Result<SpectralClassification, Error> {
    let geometry = s.ellipse_geometry()?;
    let xi = -s.determinant_polynomial(lambda);
    match geometry.membership(xi) {
        Membership::Boundary { .. } => Ok(SpectralClassification::DetBoundary),
        Membership::Exterior => Ok(SpectralClassification::Exterior),
        Membership::Interior => {
            let winding = winding_number(s, lambda, WINDING_DEFAULT_POINTS)?;
            if winding == 0 {
                return Err(Error::inconsistent(format!(
                    "-g({lambda}) is interior to the ellipse but the winding number vanishes"
                )));
            }
            Ok(SpectralClassification::WindingInterior { winding })
        }
    }
}

/// The two quasimomenta of a non-exterior spectral point, the one with the
/// smaller decay magnitude first. Solves A z² + g(λ) z + B = 0 with
/// A = (−1)^{k+1} ∏c_i, B = (−1)^{k+1} ∏b_i and maps each root to
/// (α, β) = (−Arg z, ln|z|) / L.
pub fn locate_quasiperiodicities(
    s: &SymbolCoefficients,
    lambda: C64,
) -> Result<(Quasiperiodicity, Quasiperiodicity), Error> {
    if classify(s, lambda)? == SpectralClassification::Exterior {
        return Err(Error::ExteriorPoint { lambda });
    }
    let geometry = s.ellipse_geometry()?;
    let period = s.spatial_period();
    let sign = s.parity_sign();
    let quad_a = sign * s.lower_product();
    let quad_b = sign * s.upper_product();
    let g = s.determinant_polynomial(lambda);
    let (z1, z2) = solve_quadratic(quad_a, g, quad_b)?;

    let delta = geometry.delta;
    let tol = 1e-9 * (1.0 + delta.abs());
    let mut pair = [Quasiperiodicity::from_point(z1, period), Quasiperiodicity::from_point(z2, period)];
    for q in &pair {
        let beta_spectral = q.beta * period;
        let inside = if delta >= 0.0 {
            (-tol..=delta + tol).contains(&beta_spectral)
        } else {
            (delta - tol..=tol).contains(&beta_spectral)
        };
        if !inside {
            return Err(Error::inconsistent(format!(
                "decay rate {beta_spectral} escapes the zone [0, {delta}]"
            )));
        }
    }
    // smaller decay magnitude first
    if (pair[0].beta * period - delta / 2.0) * delta.signum() > 0.0 {
        pair.swap(0, 1);
    }

    let beta_sum = (pair[0].beta + pair[1].beta) * period;
    if (beta_sum - delta).abs() > 1e-9 {
        return Err(Error::inconsistent(format!(
            "decay rates sum to {beta_sum}, expected {delta}"
        )));
    }
    let alpha_sum = (pair[0].alpha + pair[1].alpha) * period;
    if angle_distance(alpha_sum, -geometry.zeta) > 1e-9 {
        return Err(Error::inconsistent(format!(
            "quasimomenta sum to {alpha_sum}, expected {} (mod 2π)",
            wrap_angle(-geometry.zeta)
        )));
    }
    // both roots must actually carry λ in their symbol spectrum; tested via
    // the characteristic determinant, which stays well-conditioned even when
    // a(z) is defective (eigenvalue distances degrade to √ε there)
    for q in &pair {
        let z = q.associated_point(period);
        let m = s.evaluate(z)?;
        let det = m.shifted(lambda).determinant();
        let scale = m.frobenius_norm().max(1.0).powi(s.k() as i32);
        if det.norm() > 1e-8 * scale {
            return Err(Error::inconsistent(format!(
                "det(a(z) − λ) = {det} at located z = {z}, λ = {lambda}"
            )));
        }
    }
    Ok((pair[0], pair[1]))
}

/// Sample the Toeplitz-operator spectrum over the zone: symbol eigenvalues on
/// a uniform α-grid times a uniform β-grid over [0, Δ/2] (the conjugate half
/// adds no new values). Points are tagged with their source quasimomentum.
/// Up to k−1 isolated spectral points of the operator may be missing from
/// the sampled union.
pub fn toeplitz_spectrum_sample(
    s: &SymbolCoefficients,
    n_alpha: usize,
    n_beta: usize,
) -> Result<SpectralSet, Error> {
    if n_alpha < 8 {
        return Err(Error::invalid(format!("toeplitz sample requires n_alpha >= 8, got {n_alpha}")));
    }
    if n_beta < 1 {
        return Err(Error::invalid("toeplitz sample requires n_beta >= 1"));
    }
    let geometry = s.ellipse_geometry()?;
    let period = s.spatial_period();
    let half_delta = geometry.delta / 2.0 / period;
    let betas: Vec<f64> = if n_beta == 1 {
        vec![0.0]
    } else {
        (0..n_beta).map(|i| half_delta * i as f64 / (n_beta - 1) as f64).collect()
    };
    let alphas: Vec<f64> = (0..n_alpha)
        .map(|j| (-PI + 2.0 * PI * j as f64 / n_alpha as f64) / period)
        .collect();
    let chunks = map_indexed(betas.len() * alphas.len(), |idx| {
        let beta = betas[idx / alphas.len()];
        let alpha = alphas[idx % alphas.len()];
        let z = Quasiperiodicity::new(alpha, beta).associated_point(period);
        let m = s.evaluate(z).expect("associated points are nonzero");
        let eigenvalues = eig_dense(&m, false).expect("symbol blocks are finite").eigenvalues;
        (alpha, beta, eigenvalues)
    });
    let mut set = SpectralSet::default();
    for (alpha, beta, eigenvalues) in chunks {
        for value in eigenvalues {
            set.push(value, SourceTag::ToeplitzSample { alpha, beta });
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

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

    /// Independent winding oracle through the factored determinant:
    /// det(a(e^{iθ}) − λ) = ψ(e^{iθ}) + g(λ), finely sampled.
    fn winding_oracle(s: &SymbolCoefficients, lambda: C64) -> i32 {
        let g = s.determinant_polynomial(lambda);
        let n = 1 << 14;
        let mut total = 0.0;
        let mut prev = s.laurent_part(C64::from_polar(1.0, 0.0)).unwrap() + g;
        for j in 1..=n {
            let theta = 2.0 * PI * j as f64 / n as f64;
            let value = s.laurent_part(C64::from_polar(1.0, theta)).unwrap() + g;
            total += (value / prev).arg();
            prev = value;
        }
        (total / (2.0 * PI)).round() as i32
    }

    #[test]
    fn prototype_winding_values() {
        let s = prototype();
        assert_eq!(winding_number(&s, c(0.0, 0.0), 64).unwrap(), -1);
        assert_eq!(winding_oracle(&s, c(0.0, 0.0)), -1);
        assert_eq!(winding_number(&s, c(3.0, 0.0), 64).unwrap(), 0);
        assert_eq!(winding_oracle(&s, c(3.0, 0.0)), 0);
    }

    #[test]
    fn winding_stable_under_doubling() {
        let s = prototype();
        for lambda in [c(0.0, 0.0), c(0.5, 0.2), c(3.0, 0.0)] {
            let w1 = winding_number(&s, lambda, 128).unwrap();
            let w2 = winding_number(&s, lambda, 256).unwrap();
            let w3 = winding_number(&s, lambda, 512).unwrap();
            assert!(w1 == w2 && w2 == w3);
        }
    }

    #[test]
    fn hermitian_symbol_has_no_winding_region() {
        let s = hermitian_symbol();
        for lambda in [c(0.5, 0.7), c(-2.0, 0.3), c(0.0, 1.0), c(4.0, 0.0)] {
            match classify(&s, lambda).unwrap() {
                SpectralClassification::WindingInterior { .. } => {
                    panic!("collapsed symbol produced a winding interior at {lambda}")
                }
                _ => {}
            }
        }
    }

    #[test]
    fn classification_of_prototype_points() {
        let s = prototype();
        assert_eq!(
            classify(&s, c(0.0, 0.0)).unwrap(),
            SpectralClassification::WindingInterior { winding: -1 }
        );
        assert_eq!(classify(&s, c(3.0, 0.0)).unwrap(), SpectralClassification::Exterior);
        // points constructed on the determinantal boundary
        for theta in [0.4, 1.9, -2.7] {
            let z = C64::from_polar(1.0, theta);
            let m = s.evaluate(z).unwrap();
            for lambda in eig_dense(&m, false).unwrap().eigenvalues {
                assert_eq!(classify(&s, lambda).unwrap(), SpectralClassification::DetBoundary);
            }
        }
    }

    #[test]
    fn winding_rejects_on_boundary_points() {
        let s = prototype();
        let z = C64::from_polar(1.0, 0.8);
        let lambda = eig_dense(&s.evaluate(z).unwrap(), false).unwrap().eigenvalues[0];
        assert!(matches!(
            winding_number(&s, lambda, 64),
            Err(Error::OnBoundary { .. })
        ));
    }

    #[test]
    fn locate_prototype_origin() {
        let s = prototype();
        let (first, second) = locate_quasiperiodicities(&s, c(0.0, 0.0)).unwrap();
        // roots of -0.09 z² - 1.7 z + 2 = 0 are 10/9 and -20
        assert!((first.beta - (10.0f64 / 9.0).ln()).abs() < 1e-12);
        assert!(first.alpha.abs() < 1e-12);
        assert!((second.beta - 20.0f64.ln()).abs() < 1e-12);
        assert!((second.alpha - (-PI)).abs() < 1e-12);
        let z1 = first.associated_point(1.0);
        let z2 = second.associated_point(1.0);
        let product = z1 * z2;
        let expect = -200.0 / 9.0;
        assert!((product - c(expect, 0.0)).norm() < 1e-9 * expect.abs());
    }

    #[test]
    fn locate_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        let s = prototype();
        let geometry = s.ellipse_geometry().unwrap();
        for _ in 0..50 {
            let alpha = rng.gen_range(-PI..PI);
            let beta = rng.gen_range(0.0..geometry.delta / 2.0);
            let z = Quasiperiodicity::new(alpha, beta).associated_point(1.0);
            let eigenvalues = eig_dense(&s.evaluate(z).unwrap(), false).unwrap().eigenvalues;
            let lambda = eigenvalues[rng.gen_range(0..eigenvalues.len())];
            let (first, second) = locate_quasiperiodicities(&s, lambda).unwrap();
            let (alpha_c, beta_c) = geometry.conjugate(alpha, beta);
            let direct = angle_distance(first.alpha, alpha).max((first.beta - beta).abs())
                + angle_distance(second.alpha, alpha_c).max((second.beta - beta_c).abs());
            let swapped = angle_distance(second.alpha, alpha).max((second.beta - beta).abs())
                + angle_distance(first.alpha, alpha_c).max((first.beta - beta_c).abs());
            assert!(direct.min(swapped) < 1e-8, "round trip drifted by {}", direct.min(swapped));
        }
    }

    #[test]
    fn locate_rejects_exterior_points() {
        assert!(matches!(
            locate_quasiperiodicities(&prototype(), c(3.0, 0.0)),
            Err(Error::ExteriorPoint { .. })
        ));
    }

    #[test]
    fn collapsed_symbol_locates_on_the_unit_circle() {
        let s = hermitian_symbol();
        // any determinantal point of the collapsed symbol has β1 = β2 = 0
        let z = C64::from_polar(1.0, 1.2);
        let lambda = eig_dense(&s.evaluate(z).unwrap(), false).unwrap().eigenvalues[0];
        let (first, second) = locate_quasiperiodicities(&s, lambda).unwrap();
        assert!(first.beta.abs() < 1e-9 && second.beta.abs() < 1e-9);
    }

    #[test]
    fn zone_reduces_classically() {
        let zone = generalised_brillouin_zone(&hermitian_symbol()).unwrap();
        assert_eq!(zone.beta_range, (0.0, 0.0));
        let zone = generalised_brillouin_zone(&prototype()).unwrap();
        assert!((zone.beta_range.1 - (200.0f64 / 9.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn sampled_spectrum_never_classifies_exterior() {
        let s = prototype();
        let sample = toeplitz_spectrum_sample(&s, 16, 4).unwrap();
        assert_eq!(sample.len(), 16 * 4 * 2);
        for point in &sample.points {
            assert_ne!(
                classify(&s, point.value).unwrap(),
                SpectralClassification::Exterior,
                "sampled point {} classified exterior",
                point.value
            );
        }
    }

    #[test]
    fn degenerate_zone_sample_matches_unit_circle() {
        let s = hermitian_symbol();
        let sample = toeplitz_spectrum_sample(&s, 12, 3).unwrap();
        for point in &sample.points {
            assert!(point.value.im.abs() < 1e-10, "Hermitian sample strays off the real axis");
            match point.source {
                SourceTag::ToeplitzSample { beta, .. } => assert_eq!(beta, 0.0),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn symbol_spectra_agree_at_conjugate_momenta() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        let s = prototype();
        let geometry = s.ellipse_geometry().unwrap();
        for _ in 0..40 {
            let alpha = rng.gen_range(-PI..PI);
            let beta = rng.gen_range(0.0..geometry.delta);
            let (alpha_c, beta_c) = geometry.conjugate(alpha, beta);
            let e1 = eig_dense(
                &s.evaluate(Quasiperiodicity::new(alpha, beta).associated_point(1.0)).unwrap(),
                false,
            )
            .unwrap()
            .eigenvalues;
            let e2 = eig_dense(
                &s.evaluate(Quasiperiodicity::new(alpha_c, beta_c).associated_point(1.0)).unwrap(),
                false,
            )
            .unwrap()
            .eigenvalues;
            let d1 = (e1[0] - e2[0]).norm().max((e1[1] - e2[1]).norm());
            let d2 = (e1[0] - e2[1]).norm().max((e1[1] - e2[0]).norm());
            assert!(d1.min(d2) < 1e-8);
        }
    }
}
