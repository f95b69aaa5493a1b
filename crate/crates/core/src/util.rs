//! Small numeric helpers.

use crate::C64;

/// Wrap an angle into [-π, π).
pub(crate) fn wrap_angle(x: f64) -> f64 {
    use std::f64::consts::PI;
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    // rem_euclid may return exactly 2π for inputs just below -π due to rounding
    if y >= PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// |a - b| modulo 2π, in [0, π].
pub(crate) fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Principal square root with the imaginary part of an exactly-real input
/// canonicalised to +0.0, so that negative reals map onto the +i axis
/// regardless of the sign of a rounded-away imaginary zero.
pub(crate) fn principal_sqrt(z: C64) -> C64 {
    let z = if z.im == 0.0 { C64::new(z.re, 0.0) } else { z };
    z.sqrt()
}
