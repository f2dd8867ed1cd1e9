//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free (Bareiss) on an integer row-scaling of the
//! input, with deterministic pivoting: pivots are chosen as the first nonzero
//! entry scanning columns left to right and rows top to bottom. Kernel bases
//! are normalized to coprime integer vectors whose first nonzero entry is
//! positive, so every routine here returns identical output for identical
//! input on every platform.

use crate::rat::{denominator_lcm, normalized_integer_vector, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Q>,
}

impl ExactMatrix {
    /// Builds a rows x cols matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Q>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        ExactMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Integer matrix that is a row-wise positive rescaling of self.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = denominator_lcm(row);
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect()
    }

    /// Row echelon form of the integer rescaling, via Bareiss elimination.
    /// Returns (echelon rows, pivot positions (row, col)).
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
        let mut m = self.integer_rows();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let pivot = m[r][c].clone();
            for i in r + 1..self.rows {
                let factor = std::mem::replace(&mut m[i][c], BigInt::zero());
                for j in c + 1..self.cols {
                    let num = &m[i][j] * &pivot - &factor * &m[r][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = pivot;
            pivots.push((r, c));
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Kernel basis: one normalized coprime-integer vector (first nonzero
    /// entry positive) per free column, ordered by free column index.
    pub fn kernel_vectors(&self) -> Vec<Vec<Q>> {
        let (ech, pivots) = self.bareiss_echelon();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut v = vec![Q::zero(); self.cols];
            v[fc] = Q::one();
            // Back-substitute pivot variables from the bottom pivot row up.
            for &(pr, pc) in pivots.iter().rev() {
                let mut acc = Q::zero();
                for j in pc + 1..self.cols {
                    if !ech[pr][j].is_zero() && !v[j].is_zero() {
                        acc += Q::from_integer(ech[pr][j].clone()) * &v[j];
                    }
                }
                v[pc] = -acc / Q::from_integer(ech[pr][pc].clone());
            }
            let ints = normalized_integer_vector(&v);
            basis.push(ints.into_iter().map(Q::from_integer).collect());
        }
        basis
    }

    /// Exact determinant (square matrices only).
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Q::one();
        }
        // Clear denominators per row and track the scaling.
        let mut m = Vec::with_capacity(n);
        let mut scale = BigInt::one();
        for i in 0..n {
            let row = self.row(i);
            let lcm = denominator_lcm(row);
            scale *= &lcm;
            m.push(
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect::<Vec<BigInt>>(),
            );
        }
        let mut sign_flips = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(pr) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Q::zero();
                };
                m.swap(k, pr);
                sign_flips = !sign_flips;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        // After full Bareiss elimination the last pivot is the determinant of
        // the integer matrix.
        let mut det_int = m[n - 1][n - 1].clone();
        if sign_flips {
            det_int = -det_int;
        }
        Q::new(det_int, scale)
    }

    /// Solves the square system self * x = b. Returns None when singular.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, self.cols, "solve requires a square matrix");
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut aug = Vec::with_capacity(n);
        for i in 0..n {
            let mut row: Vec<Q> = self.row(i).to_vec();
            row.push(b[i].clone());
            aug.push(row);
        }
        // Plain rational Gauss-Jordan; fine for the small solves we do.
        for c in 0..n {
            let pr = (c..n).find(|&i| !aug[i][c].is_zero())?;
            aug.swap(c, pr);
            let inv = aug[c][c].clone();
            for j in c..=n {
                let v = std::mem::replace(&mut aug[c][j], Q::zero());
                aug[c][j] = v / &inv;
            }
            for i in 0..n {
                if i != c && !aug[i][c].is_zero() {
                    let f = std::mem::replace(&mut aug[i][c], Q::zero());
                    for j in c + 1..=n {
                        let sub = &f * &aug[c][j];
                        aug[i][j] -= sub;
                    }
                }
            }
        }
        Some(aug.into_iter().map(|row| row[n].clone()).collect())
    }
}

/// True when v lies in the span of the given row vectors.
pub fn in_row_span(rows: &[Vec<Q>], v: &[Q]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    let base = ExactMatrix::from_rows(rows.to_vec());
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    let ext = ExactMatrix::from_rows(extended);
    base.rank() == ext.rank()
}
