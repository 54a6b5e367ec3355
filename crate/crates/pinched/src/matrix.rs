//! Matrices over a coefficient ring, with internal-degree labels on rows and
//! columns for the graded backend.
//!
//! Convention: row labels are the internal degrees of the target generators,
//! column labels those of the source generators, and a nonzero entry (i,j)
//! must be homogeneous of degree `col_deg(j) - row_deg(i)`. A matrix is then
//! an internal-degree-preserving map of graded free modules, and restricts to
//! an F_p matrix on every internal-degree slice. Twists are carried by the
//! labels, never by the entries.

use crate::error::{Error, Result};
use crate::linalg::fp::FpMat;
use crate::linalg::int::{self, IntMat};
use crate::ring::{Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    row_degs: Vec<i64>,
    col_degs: Vec<i64>,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zero(ring: &Ring, row_degs: Vec<i64>, col_degs: Vec<i64>) -> Self {
        let rows = row_degs.len();
        let cols = col_degs.len();
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            row_degs,
            col_degs,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn zero_ungraded(ring: &Ring, rows: usize, cols: usize) -> Self {
        Self::zero(ring, vec![0; rows], vec![0; cols])
    }

    pub fn identity(ring: &Ring, degs: Vec<i64>) -> Self {
        let mut m = Self::zero(ring, degs.clone(), degs);
        for i in 0..m.rows {
            m.entries[i * m.cols + i] = ring.one();
        }
        m
    }

    pub fn new(
        ring: &Ring,
        row_degs: Vec<i64>,
        col_degs: Vec<i64>,
        entries: Vec<Scalar>,
    ) -> Result<Self> {
        let rows = row_degs.len();
        let cols = col_degs.len();
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let m = Matrix { ring: ring.clone(), rows, cols, row_degs, col_degs, entries };
        m.validate_grading()?;
        Ok(m)
    }

    /// Parse a matrix from per-entry strings (test and fixture convenience).
    pub fn from_rows_str(
        ring: &Ring,
        row_degs: Vec<i64>,
        col_degs: Vec<i64>,
        rows: &[&[&str]],
    ) -> Result<Self> {
        let mut entries = Vec::new();
        for row in rows {
            for s in *row {
                entries.push(ring.parse_scalar(s)?);
            }
        }
        Self::new(ring, row_degs, col_degs, entries)
    }

    fn validate_grading(&self) -> Result<()> {
        if !self.ring.is_graded() {
            return Ok(());
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.entry(i, j);
                if self.ring.is_zero(e) {
                    continue;
                }
                let forced = self.col_degs[j] - self.row_degs[i];
                match self.ring.homogeneous_degree(e)? {
                    Some(d) if d == forced => {}
                    _ => return Err(Error::Grading { row: i, col: j, forced }),
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row_degs(&self) -> &[i64] {
        &self.row_degs
    }
    pub fn col_degs(&self) -> &[i64] {
        &self.col_degs
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) -> Result<()> {
        if self.ring.is_graded() && !self.ring.is_zero(&v) {
            let forced = self.col_degs[j] - self.row_degs[i];
            match self.ring.homogeneous_degree(&v)? {
                Some(d) if d == forced => {}
                _ => return Err(Error::Grading { row: i, col: j, forced }),
            }
        }
        self.entries[i * self.cols + j] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn compose(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows
            || (self.ring.is_graded() && self.col_degs != other.row_degs)
        {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{} (or degree labels differ)",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(&self.ring, self.row_degs.clone(), other.col_degs.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if self.ring.is_zero(b) {
                        continue;
                    }
                    let prod = self.ring.mul(a, b)?;
                    let idx = i * out.cols + j;
                    out.entries[idx] = self.ring.add(&out.entries[idx], &prod);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("matrix addition shape mismatch".into()));
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(other.entries.iter()) {
            *e = self.ring.add(e, o);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = self.ring.neg(e);
        }
        out
    }

    pub fn scale_sign(&self, sign: i64) -> Matrix {
        if sign.rem_euclid(2) == 0 && sign != 0 {
            unreachable!("signs are +1/-1")
        }
        if sign >= 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Matrix of the dual map Hom(-, ring): transpose with negated labels.
    pub fn dual(&self) -> Matrix {
        let mut out = Matrix::zero(
            &self.ring,
            self.col_degs.iter().map(|d| -d).collect(),
            self.row_degs.iter().map(|d| -d).collect(),
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * out.cols + i] = self.entry(i, j).clone();
            }
        }
        out
    }

    /// Kronecker product; blocks ordered with `self`'s index major.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let row_degs: Vec<i64> = self
            .row_degs
            .iter()
            .flat_map(|a| other.row_degs.iter().map(move |b| a + b))
            .collect();
        let col_degs: Vec<i64> = self
            .col_degs
            .iter()
            .flat_map(|a| other.col_degs.iter().map(move |b| a + b))
            .collect();
        let mut out = Matrix::zero(&self.ring, row_degs, col_degs);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.entry(i1, j1);
                if self.ring.is_zero(a) {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.entry(i2, j2);
                        if self.ring.is_zero(b) {
                            continue;
                        }
                        let i = i1 * other.rows + i2;
                        let j = j1 * other.cols + j2;
                        out.entries[i * out.cols + j] = self.ring.mul(a, b)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Paste `block` into this matrix with top-left corner (r0, c0). Degree
    /// labels of the pasted region must agree with the block's.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        debug_assert_eq!(
            &self.row_degs[r0..r0 + block.rows],
            &block.row_degs[..],
            "row label mismatch in paste"
        );
        debug_assert_eq!(
            &self.col_degs[c0..c0 + block.cols],
            &block.col_degs[..],
            "column label mismatch in paste"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r0 + i) * self.cols + (c0 + j)] = block.entry(i, j).clone();
            }
        }
    }

    /// Integer lift of a Z/n matrix.
    pub fn to_int(&self) -> Result<IntMat> {
        if !self.ring.is_int_mod() {
            return Err(Error::Backend("integer lift".into()));
        }
        let mut out = int::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let Scalar::Mod(v) = self.entry(i, j) else { unreachable!() };
                out.set(i, j, *v as i128);
            }
        }
        Ok(out)
    }

    pub fn from_int(ring: &Ring, m: &IntMat) -> Matrix {
        let (rows, cols) = int::shape(m);
        let mut out = Matrix::zero_ungraded(ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.entries[i * cols + j] = ring.from_int(m.get(i, j) as i64);
            }
        }
        out
    }

    /// The internal-degree-`d` slice of a degree-preserving matrix, as an
    /// F_p matrix with respect to the monomial bases of the slices. Maps
    /// with a twist are sliced by relabeling one side first.
    pub fn slice(&self, d: i64) -> Result<FpMat> {
        if !self.ring.is_field_backend() {
            return Err(Error::Backend("graded slice".into()));
        }
        let p = self.ring.prime().unwrap();
        // slice bases: (generator, monomial) pairs, generator-major
        let src_offsets = slice_offsets(&self.ring, &self.col_degs, d)?;
        let tgt_offsets = slice_offsets(&self.ring, &self.row_degs, d)?;
        let src_dim = src_offsets.last().copied().unwrap_or(0);
        let tgt_dim = tgt_offsets.last().copied().unwrap_or(0);
        let mut out = FpMat::zero(p, tgt_dim, src_dim);
        for j in 0..self.cols {
            let src_mons = self.ring.slice_basis(d - self.col_degs[j])?.to_vec();
            for (mj, mono) in src_mons.iter().enumerate() {
                let colidx = src_offsets[j] + mj;
                for i in 0..self.rows {
                    let e = self.entry(i, j);
                    if self.ring.is_zero(e) {
                        continue;
                    }
                    for (pos, c) in self.ring.mono_scalar_expand(mono, e)? {
                        out.add_at(tgt_offsets[i] + pos, colidx, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Columns generating the kernel.
    ///
    /// Over Z/n the generators come from an integer lift and Smith normal
    /// form; over a field backend without variables this is the plain kernel
    /// basis. Kernels of matrices over graded rings with variables are
    /// submodules, handled by [`crate::module`].
    pub fn kernel(&self) -> Result<Matrix> {
        if self.ring.is_int_mod() {
            let n = self.ring.modulus().unwrap() as i128;
            let gens = int::zn_preimage_gens(&self.to_int()?, &int::zeros(self.rows, 0), n)?;
            return Ok(Matrix::from_int(&self.ring, &gens));
        }
        if self.ring.is_field_backend() && !self.ring.is_graded() {
            let f = self.slice(0)?;
            let k = f.kernel_basis();
            return Ok(from_fp(&self.ring, &k));
        }
        Err(Error::Backend("kernel over a graded ring: use module::kernel_submodule".into()))
    }

    /// Invariant factors of coker([m | n·I]) for a Z/n matrix; factors of 1
    /// dropped, each dividing the next.
    pub fn smith_invariants(&self) -> Result<Vec<u64>> {
        if !self.ring.is_int_mod() {
            return Err(Error::Backend("smith_invariants".into()));
        }
        let n = self.ring.modulus().unwrap() as i128;
        let inv = int::zn_cokernel_invariants(&self.to_int()?, n)?;
        Ok(inv.into_iter().map(|v| v as u64).collect())
    }

    pub fn format(&self) -> String {
        let mut rows = Vec::new();
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols)
                .map(|j| self.ring.format_scalar(self.entry(i, j)))
                .collect();
            rows.push(cells.join(", "));
        }
        format!("[{}]", rows.join("; "))
    }
}

/// Offsets of each generator's monomial block within the degree-`d` slice of
/// the free module with the given generator degrees; last element is the
/// total dimension.
pub fn slice_offsets(ring: &Ring, degs: &[i64], d: i64) -> Result<Vec<usize>> {
    let mut offsets = Vec::with_capacity(degs.len() + 1);
    let mut acc = 0usize;
    for &g in degs {
        offsets.push(acc);
        acc += ring.slice_dim(d - g)?;
    }
    offsets.push(acc);
    Ok(offsets)
}

pub fn from_fp(ring: &Ring, m: &FpMat) -> Matrix {
    let mut out = Matrix::zero_ungraded(ring, m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out.set(i, j, ring.from_int(m.get(i, j) as i64)).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingSpec};

    fn xy_ring() -> Ring {
        make_ring(RingSpec::GradedQuotient {
            p: 2,
            vars: vec![("x".into(), 1), ("y".into(), 1)],
            relations: vec!["x*y".into()],
            bound: 8,
        })
        .unwrap()
    }

    #[test]
    fn kernel_examples() {
        let f2 = make_ring(RingSpec::PrimeField { p: 2 }).unwrap();
        let m = Matrix::from_rows_str(&f2, vec![0, 0], vec![0, 0], &[&["1", "1"], &["0", "0"]])
            .unwrap();
        let k = m.kernel().unwrap();
        assert_eq!(k.cols(), 1);
        assert!(m.compose(&k).unwrap().is_zero());

        let z4 = make_ring(RingSpec::IntMod { n: 4 }).unwrap();
        let m = Matrix::from_rows_str(&z4, vec![0], vec![0], &[&["2"]]).unwrap();
        let k = m.kernel().unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(*k.entry(0, 0), z4.from_int(2));
        assert!(m.compose(&k).unwrap().is_zero());

        let zero = Matrix::zero_ungraded(&z4, 2, 2);
        let k = zero.kernel().unwrap();
        assert_eq!(k, Matrix::identity(&z4, vec![0, 0]));
    }

    #[test]
    fn smith_invariants_examples() {
        let z4 = make_ring(RingSpec::IntMod { n: 4 }).unwrap();
        let m = Matrix::from_rows_str(&z4, vec![0], vec![0], &[&["2"]]).unwrap();
        assert_eq!(m.smith_invariants().unwrap(), vec![2]);
        let id = Matrix::identity(&z4, vec![0, 0]);
        assert_eq!(id.smith_invariants().unwrap(), Vec::<u64>::new());
        let z = Matrix::zero_ungraded(&z4, 1, 1);
        assert_eq!(z.smith_invariants().unwrap(), vec![4]);
    }

    #[test]
    fn grading_enforced() {
        let r = xy_ring();
        // multiplication by x as a degree-preserving map R(0) <- R(0) is
        // rejected: the forced degree is 0 but deg x = 1
        let bad = Matrix::from_rows_str(&r, vec![0], vec![0], &[&["x"]]);
        assert!(bad.is_err());
        // with the target generator in degree -1 it is accepted
        let good = Matrix::from_rows_str(&r, vec![-1], vec![0], &[&["x"]]).unwrap();
        assert!(!good.is_zero());
    }

    #[test]
    fn graded_slice_of_multiplication_by_x() {
        let r = xy_ring();
        // multiplication by x raises ring degree by 1, so as a labeled map it
        // targets a generator in degree -1; the degree-0 slice then runs from
        // ring degree 0 to ring degree 1
        let m = Matrix::from_rows_str(&r, vec![-1], vec![0], &[&["x"]]).unwrap();
        let s = m.slice(0).unwrap();
        // source slice = {1}; target slice = {x, y}
        assert_eq!((s.rows, s.cols), (2, 1));
        assert_eq!(s.col(0), vec![1, 0]); // picks out x
        // slice of the zero matrix is zero
        let z = Matrix::zero(&r, vec![-1], vec![0]);
        assert!(z.slice(1).unwrap().is_zero());
    }

    #[test]
    fn slice_commutes_with_composition() {
        let r = xy_ring();
        let a = Matrix::from_rows_str(&r, vec![-2], vec![-1], &[&["y"]]).unwrap();
        let b = Matrix::from_rows_str(&r, vec![-1], vec![0], &[&["y"]]).unwrap();
        let ab = a.compose(&b).unwrap();
        for d in 0..=4 {
            let lhs = ab.slice(d).unwrap();
            let rhs = a.slice(d).unwrap().mul(&b.slice(d).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "degree {d}");
        }
    }
}
