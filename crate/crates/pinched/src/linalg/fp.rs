//! Dense linear algebra over a prime field F_p.
//!
//! Everything here is exact; elements are reduced residues stored as `u64`.
//! Matrices are small (desk scale), so plain Gaussian elimination is used
//! throughout.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid; p is prime and a != 0 mod p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "element not invertible");
    (t0.rem_euclid(p as i128)) as u64
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(p, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let cur = self.get(i, j);
        self.set(i, j, (cur + v % self.p) % self.p);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn hstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.p, other.p);
        let mut m = FpMat::zero(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn from_cols(p: u64, rows: usize, cols: &[Vec<u64>]) -> FpMat {
        let mut m = FpMat::zero(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn mul(&self, other: &FpMat) -> Result<FpMat> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = FpMat::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (m.get(i, j) + a * other.get(k, j)) % self.p;
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) * (v[j] % self.p)) % self.p;
                }
                acc
            })
            .collect()
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                let (a, b) = (self.get(row, j), self.get(pr, j));
                self.set(row, j, b);
                self.set(pr, j, a);
            }
            let inv = inv_mod(self.get(row, col), self.p);
            for j in 0..self.cols {
                let v = self.get(row, j) * inv % self.p;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let f = self.get(r, col);
                    for j in 0..self.cols {
                        let v = (self.get(r, j) + (self.p - f) * self.get(row, j)) % self.p;
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Basis of the right kernel, returned as the columns of a matrix.
    pub fn kernel_basis(&self) -> FpMat {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FpMat::zero(self.p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.get(r, fc);
                if v != 0 {
                    basis.set(pc, k, self.p - v);
                }
            }
        }
        basis
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMat::zero(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.echelonize();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Prune the columns to an independent spanning subset (stable order).
    pub fn independent_cols(&self) -> FpMat {
        let mut kept: Vec<Vec<u64>> = Vec::new();
        let mut acc = FpMat::zero(self.p, self.rows, 0);
        for j in 0..self.cols {
            let c = self.col(j);
            let cand = acc.hstack(&FpMat::from_cols(self.p, self.rows, &[c.clone()]));
            if cand.rank() > acc.rank() {
                kept.push(c);
                acc = cand;
            }
        }
        FpMat::from_cols(self.p, self.rows, &kept)
    }
}

/// Dimension of the span of the columns of `a` together with those of `b`.
pub fn sum_rank(a: &FpMat, b: &FpMat) -> usize {
    a.hstack(b).rank()
}

/// Basis (as columns) of the preimage `{v : m·v ∈ span(w)}`.
///
/// `w` may have zero columns, in which case this is the plain kernel.
pub fn preimage_basis(m: &FpMat, w: &FpMat) -> FpMat {
    assert_eq!(m.rows, w.rows);
    if w.cols == 0 {
        return m.kernel_basis();
    }
    let stacked = m.hstack(w);
    let k = stacked.kernel_basis();
    // project onto the first block and prune
    let mut proj = FpMat::zero(m.p, m.cols, k.cols);
    for j in 0..k.cols {
        for i in 0..m.cols {
            proj.set(i, j, k.get(i, j));
        }
    }
    proj.independent_cols()
}

/// Is `v` in the column span of `a`?
pub fn in_span(a: &FpMat, v: &[u64]) -> bool {
    a.solve(v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        // over F_2: [[1,1],[0,0]] has kernel spanned by (1,1)
        let m = FpMat::from_rows(2, vec![vec![1, 1], vec![0, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols, 1);
        assert_eq!(k.col(0), vec![1, 1]);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn zero_matrix_kernel_is_identity() {
        let m = FpMat::zero(2, 2, 2);
        let k = m.kernel_basis();
        assert_eq!(k, FpMat::identity(2, 2));
    }

    #[test]
    fn solve_and_rank_mod_3() {
        // note [[1,2],[2,1]] is singular mod 3
        let m = FpMat::from_rows(3, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(m.rank(), 1);
        let m = FpMat::from_rows(3, vec![vec![1, 2], vec![0, 1]]);
        assert_eq!(m.rank(), 2);
        let x = m.solve(&[1, 0]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 0]);
    }

    #[test]
    fn preimage_of_subspace() {
        // m = id, w = span{(1,0)}: preimage is span{(1,0)}
        let m = FpMat::identity(2, 2);
        let w = FpMat::from_cols(2, 2, &[vec![1, 0]]);
        let pre = preimage_basis(&m, &w);
        assert_eq!(pre.cols, 1);
        assert_eq!(pre.col(0), vec![1, 0]);
    }
}
