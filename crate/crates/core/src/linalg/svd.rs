//! Smallest singular value via Householder bidiagonalization and Sturm-count
//! bisection on the Golub–Kahan tridiagonal.

use super::DenseComplexMatrix;
use crate::{C64, Error};

/// Reduce A to real upper-bidiagonal form by two-sided unitary reflections.
/// Returns (diagonal, superdiagonal) with nonnegative entries.
fn bidiagonalize(a: &DenseComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.order();
    let mut m = a.clone();
    let mut v = vec![C64::new(0.0, 0.0); n];
    // complex Householder zeroing below/right, leaving complex d/e
    for k in 0..n {
        // left reflector on column k, rows k..n
        let mut tail_sqr = 0.0;
        for row in k + 1..n {
            tail_sqr += m[(row, k)].norm_sqr();
        }
        if tail_sqr > 0.0 {
            let alpha = m[(k, k)];
            let norm = (tail_sqr + alpha.norm_sqr()).sqrt();
            let phase = if alpha.norm() == 0.0 { C64::new(1.0, 0.0) } else { alpha / alpha.norm() };
            let beta = -phase * norm;
            let mut vnorm_sqr = 0.0;
            for row in k..n {
                let val = if row == k { alpha - beta } else { m[(row, k)] };
                v[row] = val;
                vnorm_sqr += val.norm_sqr();
            }
            let tau = 2.0 / vnorm_sqr;
            for j in k..n {
                let mut dot = C64::new(0.0, 0.0);
                for row in k..n {
                    dot += v[row].conj() * m[(row, j)];
                }
                dot *= tau;
                for row in k..n {
                    let sub = v[row] * dot;
                    m[(row, j)] -= sub;
                }
            }
            m[(k, k)] = beta;
            for row in k + 1..n {
                m[(row, k)] = C64::new(0.0, 0.0);
            }
        }
        // right reflector on row k, columns k+1..n
        if k + 2 < n {
            let mut tail_sqr = 0.0;
            for col in k + 2..n {
                tail_sqr += m[(k, col)].norm_sqr();
            }
            if tail_sqr > 0.0 {
                let alpha = m[(k, k + 1)];
                let norm = (tail_sqr + alpha.norm_sqr()).sqrt();
                let phase =
                    if alpha.norm() == 0.0 { C64::new(1.0, 0.0) } else { alpha / alpha.norm() };
                let beta = -phase * norm;
                let mut vnorm_sqr = 0.0;
                for col in k + 1..n {
                    let val = if col == k + 1 { alpha - beta } else { m[(k, col)] };
                    v[col] = val;
                    vnorm_sqr += val.norm_sqr();
                }
                let tau = 2.0 / vnorm_sqr;
                // A <- A P with P = I - tau w wᴴ, w chosen against the conjugated row,
                // i.e. rows pick up A w terms: (AP)_{rj} = A_{rj} - tau (A w)_r w̄_j
                // with w_j = conj(v_j) so that row k maps onto beta e1.
                for row in k..n {
                    let mut dot = C64::new(0.0, 0.0);
                    for col in k + 1..n {
                        dot += m[(row, col)] * v[col].conj();
                    }
                    dot *= tau;
                    for col in k + 1..n {
                        let sub = dot * v[col];
                        m[(row, col)] -= sub;
                    }
                }
                m[(k, k + 1)] = beta;
                for col in k + 2..n {
                    m[(k, col)] = C64::new(0.0, 0.0);
                }
            }
        }
    }
    // Unit-modulus diagonal scalings on both sides can make every bidiagonal
    // entry real nonnegative independently (the entries form a path graph),
    // so only the magnitudes matter for the singular values.
    let d: Vec<f64> = (0..n).map(|k| m[(k, k)].norm()).collect();
    let e: Vec<f64> = (0..n.saturating_sub(1)).map(|k| m[(k, k + 1)].norm()).collect();
    (d, e)
}

/// Number of eigenvalues of the Golub–Kahan tridiagonal strictly below `t`,
/// by the Sturm/LDLᵀ pivot count. The Golub–Kahan matrix has zero diagonal
/// and off-diagonals d0, e0, d1, e1, …, d_{n-1}; its spectrum is {±σ_i}.
fn golub_kahan_count_below(d: &[f64], e: &[f64], t: f64) -> usize {
    let pivmin = f64::MIN_POSITIVE;
    let mut count = 0usize;
    let mut q = -t;
    if q < 0.0 {
        count += 1;
    }
    let n = d.len();
    for i in 0..2 * n - 1 {
        let off = if i % 2 == 0 { d[i / 2] } else { e[i / 2] };
        let mut denom = q;
        if denom.abs() < pivmin {
            denom = -pivmin;
        }
        q = -t - off * off / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

pub(super) fn smallest_singular_value(a: &DenseComplexMatrix) -> Result<f64, Error> {
    let n = a.order();
    let (d, e) = bidiagonalize(a);
    if n == 1 {
        return Ok(d[0]);
    }
    // Gershgorin upper bound on the Golub–Kahan spectrum radius
    let mut hi = 0.0f64;
    for i in 0..n {
        let left = if i == 0 { 0.0 } else { e[i - 1] };
        let right = if i < n - 1 { e[i] } else { 0.0 };
        hi = hi.max(d[i] + left.max(right));
        hi = hi.max(d[i] + left + right);
    }
    if hi == 0.0 {
        return Ok(0.0);
    }
    let mut lo = 0.0f64;
    let mut hi = hi * (1.0 + 1e-12);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if golub_kahan_count_below(&d, &e, mid) > n {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi.max(1e-300) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
