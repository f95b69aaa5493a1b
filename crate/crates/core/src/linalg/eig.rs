//! Eigenvalues via Hessenberg reduction and shifted QR iteration; eigenvectors
//! via inverse iteration on the shifted matrix.

use super::{DenseComplexMatrix, LuFactors};
use crate::{C64, Error};

/// Total QR-step budget: 100 · n.
const QR_STEP_CAP_PER_ORDER: usize = 100;
/// Steps on one block before an exceptional shift breaks limit cycles.
const EXCEPTIONAL_EVERY: usize = 20;

/// Reduce to upper Hessenberg form in place by Householder reflections.
fn hessenberg_in_place(h: &mut DenseComplexMatrix) {
    let n = h.order();
    if n < 3 {
        return;
    }
    let mut v = vec![C64::new(0.0, 0.0); n];
    for col in 0..n - 2 {
        // reflector annihilating h[col+2.., col]
        let mut tail_sqr = 0.0;
        for row in col + 2..n {
            tail_sqr += h[(row, col)].norm_sqr();
        }
        if tail_sqr == 0.0 {
            continue;
        }
        let alpha = h[(col + 1, col)];
        let norm = (tail_sqr + alpha.norm_sqr()).sqrt();
        let phase = if alpha.norm() == 0.0 { C64::new(1.0, 0.0) } else { alpha / alpha.norm() };
        let beta = -phase * norm;
        // v = x - beta e1, normalized so that P = I - tau v vᴴ with tau = 2/‖v‖² … we
        // use the unnormalized form P = I - (2/‖v‖²) v vᴴ, which is unitary and
        // maps x to beta e1.
        let mut vnorm_sqr = 0.0;
        for row in col + 1..n {
            let val = if row == col + 1 { alpha - beta } else { h[(row, col)] };
            v[row] = val;
            vnorm_sqr += val.norm_sqr();
        }
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;
        // left: H <- P H, rows col+1..n
        for j in col..n {
            let mut dot = C64::new(0.0, 0.0);
            for row in col + 1..n {
                dot += v[row].conj() * h[(row, j)];
            }
            dot *= tau;
            for row in col + 1..n {
                let sub = v[row] * dot;
                h[(row, j)] -= sub;
            }
        }
        // right: H <- H P, all rows
        for i in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for jcol in col + 1..n {
                dot += h[(i, jcol)] * v[jcol];
            }
            dot *= tau;
            for jcol in col + 1..n {
                let sub = dot * v[jcol].conj();
                h[(i, jcol)] -= sub;
            }
        }
        // exact zeros below the subdiagonal
        h[(col + 1, col)] = beta;
        for row in col + 2..n {
            h[(row, col)] = C64::new(0.0, 0.0);
        }
    }
}

/// Complex Givens rotation: returns (c, s) with c real such that
/// applying rows' = [c s; -s̄ c] to (a, b)ᵀ yields (r, 0)ᵀ.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let denom = (an * an + bn * bn).sqrt();
    let c = an / denom;
    let s = (a / an) * b.conj() / denom;
    (c, s)
}

/// Eigenvalues of a 2x2 complex matrix, numerically stable ordering:
/// the root farther from zero first, the companion via the determinant.
fn eig_2x2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let mean = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    let l1 = if (mean + disc).norm() >= (mean - disc).norm() { mean + disc } else { mean - disc };
    if l1.norm() == 0.0 {
        return (l1, mean - (l1 - mean));
    }
    (l1, det / l1)
}

fn subdiagonal_negligible(h: &DenseComplexMatrix, i: usize, hnorm: f64) -> bool {
    let small = f64::EPSILON * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm());
    let small = if small == 0.0 { f64::EPSILON * hnorm } else { small };
    h[(i, i - 1)].norm() <= small
}

/// Shifted single-step QR on the active Hessenberg block `lo..hi`.
fn qr_step(h: &mut DenseComplexMatrix, lo: usize, hi: usize, shift: C64) {
    // first rotation from the shifted first column
    let (mut c, mut s) = givens(h[(lo, lo)] - shift, h[(lo + 1, lo)]);
    for i in lo..hi - 1 {
        if i > lo {
            // annihilate the bulge at (i+1, i-1)
            let (cc, ss) = givens(h[(i, i - 1)], h[(i + 1, i - 1)]);
            c = cc;
            s = ss;
            let x = h[(i, i - 1)];
            let y = h[(i + 1, i - 1)];
            h[(i, i - 1)] = x * c + s * y;
            h[(i + 1, i - 1)] = C64::new(0.0, 0.0);
        }
        // rows i, i+1 from the left
        for j in i..hi {
            let x = h[(i, j)];
            let y = h[(i + 1, j)];
            h[(i, j)] = x * c + s * y;
            h[(i + 1, j)] = -s.conj() * x + y * c;
        }
        // columns i, i+1 from the right
        let row_end = (i + 3).min(hi);
        for r in lo..row_end {
            let x = h[(r, i)];
            let y = h[(r, i + 1)];
            h[(r, i)] = x * c + s.conj() * y;
            h[(r, i + 1)] = -s * x + y * c;
        }
    }
}

/// Eigenvalues of a general complex matrix via Hessenberg + shifted QR.
pub(super) fn eigenvalues(a: &DenseComplexMatrix) -> Result<Vec<C64>, Error> {
    let n = a.order();
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    let hnorm = h.frobenius_norm();
    let mut evals = vec![C64::new(0.0, 0.0); n];
    let mut hi = n;
    let mut steps_total = 0usize;
    let cap = QR_STEP_CAP_PER_ORDER * n;
    let mut steps_this_block = 0usize;
    while hi > 0 {
        if hi == 1 {
            evals[0] = h[(0, 0)];
            hi = 0;
            continue;
        }
        // deflate converged trailing eigenvalues
        if subdiagonal_negligible(&h, hi - 1, hnorm) {
            evals[hi - 1] = h[(hi - 1, hi - 1)];
            hi -= 1;
            steps_this_block = 0;
            continue;
        }
        // find the active block start
        let mut lo = hi - 1;
        while lo > 0 && !subdiagonal_negligible(&h, lo, hnorm) {
            lo -= 1;
        }
        if hi - lo == 2 {
            let (l1, l2) = eig_2x2(h[(lo, lo)], h[(lo, lo + 1)], h[(lo + 1, lo)], h[(lo + 1, lo + 1)]);
            evals[lo] = l1;
            evals[lo + 1] = l2;
            // zero the block couplings so the remaining iteration never revisits it
            h[(lo + 1, lo)] = C64::new(0.0, 0.0);
            h[(lo, lo)] = l1;
            h[(lo + 1, lo + 1)] = l2;
            hi = lo;
            steps_this_block = 0;
            continue;
        }
        if steps_total >= cap {
            return Err(Error::EigenNonConvergence { order: n, residual: h[(hi - 1, hi - 2)].norm() });
        }
        let shift = if steps_this_block > 0 && steps_this_block % EXCEPTIONAL_EVERY == 0 {
            h[(hi - 1, hi - 1)] + 0.75 * h[(hi - 1, hi - 2)].norm()
        } else {
            let (l1, l2) =
                eig_2x2(h[(hi - 2, hi - 2)], h[(hi - 2, hi - 1)], h[(hi - 1, hi - 2)], h[(hi - 1, hi - 1)]);
            let target = h[(hi - 1, hi - 1)];
            if (l1 - target).norm() <= (l2 - target).norm() { l1 } else { l2 }
        };
        qr_step(&mut h, lo, hi, shift);
        steps_total += 1;
        steps_this_block += 1;
    }
    Ok(evals)
}

/// Unit-norm eigenvector for a known eigenvalue by inverse iteration on the
/// shifted matrix (at most three solves, no re-orthogonalization; the
/// tridiagonal-derived problems this serves have one-dimensional eigenspaces).
pub fn inverse_iteration(a: &DenseComplexMatrix, lambda: C64) -> Result<Vec<C64>, Error> {
    let n = a.order();
    if n == 0 {
        return Err(Error::invalid("inverse_iteration: empty matrix"));
    }
    let norm = a.frobenius_norm();
    let floor = {
        let f = norm * f64::EPSILON;
        if f > 0.0 { f } else { f64::MIN_POSITIVE }
    };
    let shifted = a.shifted(lambda);
    let lu = LuFactors::new(&shifted, floor);
    // deterministic pseudo-random start to avoid accidental orthogonality
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut v: Vec<C64> = (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((state >> 11) as f64) / (1u64 << 53) as f64 - 0.5;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((state >> 11) as f64) / (1u64 << 53) as f64 - 0.5;
            C64::new(1.0 + re, im)
        })
        .collect();
    normalize(&mut v);
    let mut best = v.clone();
    let mut best_res = f64::INFINITY;
    for _ in 0..3 {
        lu.solve(&mut v);
        normalize(&mut v);
        let av = a.matvec(&v);
        let res: f64 = av
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - lambda * y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if res < best_res {
            best_res = res;
            best.copy_from_slice(&v);
        }
        if res <= 1e-14 * norm.max(1.0) {
            break;
        }
    }
    Ok(best)
}

fn normalize(v: &mut [C64]) {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v {
            *z /= norm;
        }
    }
}
