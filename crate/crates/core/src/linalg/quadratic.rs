//! Stable complex quadratic root solving.

use crate::{C64, Error};

/// Both roots of c2 z² + c1 z + c0 = 0.
///
/// Uses the cancellation-free variant: the larger root from the sign of the
/// discriminant branch maximizing |c1 ± √disc|, the other from Vieta.
pub fn solve_quadratic(c2: C64, c1: C64, c0: C64) -> Result<(C64, C64), Error> {
    if c2.norm() == 0.0 {
        return Err(Error::DegenerateQuadratic);
    }
    if c0.norm() == 0.0 {
        return Ok((C64::new(0.0, 0.0), -c1 / c2));
    }
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    let plus = c1 + disc;
    let minus = c1 - disc;
    let q = if plus.norm() >= minus.norm() { -0.5 * plus } else { -0.5 * minus };
    if q.norm() == 0.0 {
        // c1 = 0 and disc = 0: double root at 0 is excluded by c0 != 0,
        // so this only happens when both roots vanish
        return Ok((C64::new(0.0, 0.0), C64::new(0.0, 0.0)));
    }
    Ok((q / c2, c0 / q))
}
