//! Pivoted LU factorization of dense complex matrices.

use super::DenseComplexMatrix;
use crate::C64;

/// Packed LU factors with partial pivoting, PA = LU.
///
/// A positive `pivot_floor` replaces vanishing pivots by a tiny value of the
/// same phase; inverse iteration relies on this to solve against nearly
/// singular shifts.
pub(crate) struct LuFactors {
    lu: DenseComplexMatrix,
    pivots: Vec<usize>,
    swaps: usize,
    exactly_singular: bool,
}

impl LuFactors {
    pub(crate) fn new(a: &DenseComplexMatrix, pivot_floor: f64) -> Self {
        let n = a.order();
        let mut lu = a.clone();
        let mut pivots = Vec::with_capacity(n);
        let mut swaps = 0;
        let mut exactly_singular = false;
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = lu[(col, col)].norm();
            for row in col + 1..n {
                let mag = lu[(row, col)].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = row;
                }
            }
            if pivot_row != col {
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                swaps += 1;
            }
            pivots.push(pivot_row);
            if pivot_mag == 0.0 {
                exactly_singular = true;
                if pivot_floor > 0.0 {
                    lu[(col, col)] = C64::new(pivot_floor, 0.0);
                } else {
                    continue;
                }
            } else if pivot_mag < pivot_floor {
                let scale = pivot_floor / pivot_mag;
                let bumped = lu[(col, col)] * scale;
                lu[(col, col)] = bumped;
            }
            let pivot = lu[(col, col)];
            for row in col + 1..n {
                let factor = lu[(row, col)] / pivot;
                lu[(row, col)] = factor;
                if factor.norm_sqr() != 0.0 {
                    for j in col + 1..n {
                        let sub = factor * lu[(col, j)];
                        lu[(row, j)] -= sub;
                    }
                }
            }
        }
        Self { lu, pivots, swaps, exactly_singular }
    }

    pub(crate) fn is_exactly_singular(&self) -> bool {
        self.exactly_singular
    }

    pub(crate) fn determinant(&self) -> C64 {
        if self.exactly_singular {
            return C64::new(0.0, 0.0);
        }
        let n = self.lu.order();
        let mut det = if self.swaps % 2 == 0 { C64::new(1.0, 0.0) } else { C64::new(-1.0, 0.0) };
        for i in 0..n {
            det *= self.lu[(i, i)];
        }
        det
    }

    /// Solve A x = b in place.
    pub(crate) fn solve(&self, b: &mut [C64]) {
        let n = self.lu.order();
        assert_eq!(b.len(), n);
        for (col, &p) in self.pivots.iter().enumerate() {
            if p != col {
                b.swap(col, p);
            }
        }
        // forward: L y = Pb
        for i in 1..n {
            let mut acc = b[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * b[j];
            }
            b[i] = acc;
        }
        // backward: U x = y
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * b[j];
            }
            b[i] = acc / self.lu[(i, i)];
        }
    }
}
