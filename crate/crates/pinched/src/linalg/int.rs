//! Exact integer linear algebra: Smith normal form with transforms,
//! integer kernels and solving, and lattice arithmetic for modules over Z/n.
//!
//! A Z/n-submodule of (Z/n)^m is represented by an integer lattice L with
//! n·Z^m ⊆ L ⊆ Z^m, given by a generating set of columns (the generators of
//! the submodule lifted to integers, with n·I adjoined implicitly by the
//! helpers below). All arithmetic is checked `i128`; overflow is reported,
//! never wrapped.

use crate::error::{Error, Result};

/// Dense integer matrix with explicit dimensions (so 0-row and 0-column
/// matrices keep their shape).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

impl IntMat {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
}

fn chk_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn chk_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub fn zeros(rows: usize, cols: usize) -> IntMat {
    IntMat { rows, cols, data: vec![0; rows * cols] }
}

pub fn identity(n: usize) -> IntMat {
    let mut m = zeros(n, n);
    for i in 0..n {
        m.set(i, i, 1);
    }
    m
}

pub fn shape(m: &IntMat) -> (usize, usize) {
    (m.rows, m.cols)
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> Result<IntMat> {
    assert_eq!(a.cols, b.rows, "integer matrix shape mismatch");
    let mut out = zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let v = a.get(i, k);
            if v == 0 {
                continue;
            }
            for j in 0..b.cols {
                out.set(i, j, chk_add(out.get(i, j), chk_mul(v, b.get(k, j))?)?);
            }
        }
    }
    Ok(out)
}

pub fn mat_vec(a: &IntMat, v: &[i128]) -> Result<Vec<i128>> {
    assert_eq!(a.cols, v.len());
    let mut out = vec![0i128; a.rows];
    for (i, o) in out.iter_mut().enumerate() {
        for k in 0..a.cols {
            *o = chk_add(*o, chk_mul(a.get(i, k), v[k])?)?;
        }
    }
    Ok(out)
}

pub fn hstack(a: &IntMat, b: &IntMat) -> IntMat {
    assert_eq!(a.rows, b.rows);
    let mut out = zeros(a.rows, a.cols + b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set(i, j, a.get(i, j));
        }
        for j in 0..b.cols {
            out.set(i, a.cols + j, b.get(i, j));
        }
    }
    out
}

pub struct Snf {
    /// Diagonal entries of D (length min(rows, cols)), normalized so each
    /// divides the next and all are non-negative.
    pub diag: Vec<i128>,
    pub u: IntMat,
    pub v: IntMat,
}

/// Smith normal form: returns (U, D, V) with U·A·V = D, U and V unimodular.
pub fn snf(a: &IntMat) -> Result<Snf> {
    let (rows, cols) = shape(a);
    let mut m = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    fn swap_rows(m: &mut IntMat, u: &mut IntMat, i: usize, j: usize) {
        for c in 0..m.cols {
            let (a, b) = (m.get(i, c), m.get(j, c));
            m.set(i, c, b);
            m.set(j, c, a);
        }
        for c in 0..u.cols {
            let (a, b) = (u.get(i, c), u.get(j, c));
            u.set(i, c, b);
            u.set(j, c, a);
        }
    }
    fn swap_cols(m: &mut IntMat, v: &mut IntMat, i: usize, j: usize) {
        for r in 0..m.rows {
            let (a, b) = (m.get(r, i), m.get(r, j));
            m.set(r, i, b);
            m.set(r, j, a);
        }
        for r in 0..v.rows {
            let (a, b) = (v.get(r, i), v.get(r, j));
            v.set(r, i, b);
            v.set(r, j, a);
        }
    }

    let t = rows.min(cols);
    let mut k = 0;
    while k < t {
        // find a pivot of minimal nonzero absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if m.get(i, j) != 0
                    && pivot.is_none_or(|(pi, pj)| m.get(i, j).abs() < m.get(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            swap_rows(&mut m, &mut u, k, pi);
        }
        if pj != k {
            swap_cols(&mut m, &mut v, k, pj);
        }

        // clear row and column k
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if m.get(i, k) != 0 {
                    let q = div_round(m.get(i, k), m.get(k, k));
                    if q != 0 {
                        for j in 0..cols {
                            m.set(i, j, chk_add(m.get(i, j), -chk_mul(q, m.get(k, j))?)?);
                        }
                        for j in 0..rows {
                            u.set(i, j, chk_add(u.get(i, j), -chk_mul(q, u.get(k, j))?)?);
                        }
                    }
                    if m.get(i, k) != 0 {
                        swap_rows(&mut m, &mut u, k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if m.get(k, j) != 0 {
                    let q = div_round(m.get(k, j), m.get(k, k));
                    if q != 0 {
                        for i in 0..rows {
                            m.set(i, j, chk_add(m.get(i, j), -chk_mul(q, m.get(i, k))?)?);
                        }
                        for i in 0..cols {
                            v.set(i, j, chk_add(v.get(i, j), -chk_mul(q, v.get(i, k))?)?);
                        }
                    }
                    if m.get(k, j) != 0 {
                        swap_cols(&mut m, &mut v, k, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // enforce divisibility of the remaining block by the pivot
        let piv = m.get(k, k);
        let mut bad: Option<usize> = None;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if m.get(i, j) % piv != 0 {
                    bad = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(bi) = bad {
            for j in 0..cols {
                m.set(k, j, chk_add(m.get(k, j), m.get(bi, j))?);
            }
            for j in 0..rows {
                u.set(k, j, chk_add(u.get(k, j), u.get(bi, j))?);
            }
            continue;
        }
        k += 1;
    }

    let mut diag: Vec<i128> = (0..t).map(|i| m.get(i, i)).collect();
    for (i, d) in diag.iter_mut().enumerate() {
        if *d < 0 {
            *d = -*d;
            for j in 0..rows {
                u.set(i, j, -u.get(i, j));
            }
        }
    }
    Ok(Snf { diag, u, v })
}

/// Round-to-nearest integer division (keeps SNF coefficients small).
fn div_round(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}

/// Basis of the integer kernel of `a`, as columns.
pub fn kernel_basis(a: &IntMat) -> Result<IntMat> {
    let (_, cols) = shape(a);
    let s = snf(a)?;
    let rank = s.diag.iter().filter(|&&d| d != 0).count();
    let mut out = zeros(cols, cols - rank);
    for (k, j) in (rank..cols).enumerate() {
        for i in 0..cols {
            out.set(i, k, s.v.get(i, j));
        }
    }
    Ok(out)
}

/// One integer solution of `a·x = b`, if any.
pub fn solve(a: &IntMat, b: &[i128]) -> Result<Option<Vec<i128>>> {
    let (rows, cols) = shape(a);
    assert_eq!(rows, b.len());
    let s = snf(a)?;
    let ub = mat_vec(&s.u, b)?;
    let t = rows.min(cols);
    let mut y = vec![0i128; cols];
    for i in 0..t {
        if s.diag[i] == 0 {
            if ub[i] != 0 {
                return Ok(None);
            }
        } else {
            if ub[i] % s.diag[i] != 0 {
                return Ok(None);
            }
            y[i] = ub[i] / s.diag[i];
        }
    }
    for item in ub.iter().take(rows).skip(t) {
        if *item != 0 {
            return Ok(None);
        }
    }
    Ok(Some(mat_vec(&s.v, &y)?))
}

/// Columnwise solve: X with a·X = b, if every column is solvable.
pub fn solve_matrix(a: &IntMat, b: &IntMat) -> Result<Option<IntMat>> {
    let mut out = zeros(a.cols, b.cols);
    for j in 0..b.cols {
        match solve(a, &b.col(j))? {
            None => return Ok(None),
            Some(x) => {
                for i in 0..a.cols {
                    out.set(i, j, x[i]);
                }
            }
        }
    }
    Ok(Some(out))
}

/// Basis of the lattice spanned by the columns of `gens` (column echelon).
pub fn col_lattice_basis(gens: &IntMat) -> Result<IntMat> {
    let (rows, cols) = shape(gens);
    let mut active: Vec<Vec<i128>> = (0..cols).map(|j| gens.col(j)).collect();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for row in 0..rows {
        loop {
            let nz: Vec<usize> = (0..active.len()).filter(|&j| active[j][row] != 0).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                basis.push(active.remove(nz[0]));
                break;
            }
            let jmin = *nz.iter().min_by_key(|&&j| (active[j][row].abs(), j)).unwrap();
            let piv = active[jmin].clone();
            for &j in &nz {
                if j == jmin {
                    continue;
                }
                let q = active[j][row] / piv[row];
                for i in 0..rows {
                    active[j][i] = chk_add(active[j][i], -chk_mul(q, piv[i])?)?;
                }
            }
        }
    }
    Ok(cols_to_mat(rows, &basis))
}

/// Invariant factors (> 1) of the finite quotient `ambient-lattice / sub`,
/// where `sub` is spanned by the columns of `sub_gens` together with n·Z^m,
/// and the ambient lattice is spanned by `amb_gens` together with n·Z^m.
pub fn subquotient_invariants(
    amb_gens: &IntMat,
    sub_gens: &IntMat,
    m: usize,
    n: i128,
) -> Result<Vec<i128>> {
    let amb = hstack(amb_gens, &scaled_identity(m, n));
    let basis = col_lattice_basis(&amb)?;
    if basis.cols != m {
        return Err(Error::Invalid("ambient lattice is not full rank".to_string()));
    }
    let sub = hstack(sub_gens, &scaled_identity(m, n));
    let coords = solve_matrix(&basis, &sub)?
        .ok_or_else(|| Error::Invalid("submodule not contained in ambient module".to_string()))?;
    let s = snf(&coords)?;
    if s.diag.iter().any(|&d| d == 0) || s.diag.len() < m {
        return Err(Error::Invalid("quotient is not finite".to_string()));
    }
    let mut inv: Vec<i128> = s.diag.iter().copied().filter(|&d| d > 1).collect();
    inv.sort_unstable();
    Ok(inv)
}

pub fn scaled_identity(m: usize, n: i128) -> IntMat {
    let mut id = identity(m);
    for i in 0..m {
        id.set(i, i, n);
    }
    id
}

/// Generators of `{x in (Z/n)^cols : a·x = 0 mod (columns of k_target, n)}`.
///
/// `k_target` may have zero columns, in which case this is the kernel of `a`
/// over Z/n. Columns are reduced mod n, zero columns dropped, and redundant
/// generators pruned greedily.
pub fn zn_preimage_gens(a: &IntMat, k_target: &IntMat, n: i128) -> Result<IntMat> {
    let (rows, cols) = shape(a);
    let aug = hstack(&hstack(a, k_target), &scaled_identity(rows, n));
    let ker = kernel_basis(&aug)?;
    let mut gens: Vec<Vec<i128>> = Vec::new();
    for j in 0..ker.cols {
        let v: Vec<i128> = (0..cols).map(|i| ker.get(i, j).rem_euclid(n)).collect();
        if v.iter().any(|&x| x != 0) {
            gens.push(v);
        }
    }
    gens.sort();
    gens.reverse();
    gens.dedup();
    // drop generators expressible in terms of the others
    let mut kept: Vec<Vec<i128>> = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        let others: Vec<Vec<i128>> = kept
            .iter()
            .cloned()
            .chain(gens[idx + 1..].iter().cloned())
            .collect();
        let mat = cols_to_mat(cols, &others);
        if zn_solve(&mat, g, n)?.is_none() {
            kept.push(g.clone());
        }
    }
    Ok(cols_to_mat(cols, &kept))
}

pub fn cols_to_mat(rows: usize, cols: &[Vec<i128>]) -> IntMat {
    let mut m = zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        assert_eq!(c.len(), rows);
        for i in 0..rows {
            m.set(i, j, c[i]);
        }
    }
    m
}

/// One solution of `a·x = b` over Z/n, if any.
pub fn zn_solve(a: &IntMat, b: &[i128], n: i128) -> Result<Option<Vec<i128>>> {
    let (rows, cols) = shape(a);
    let aug = hstack(a, &scaled_identity(rows, n));
    match solve(&aug, b)? {
        None => Ok(None),
        Some(x) => Ok(Some(x.into_iter().take(cols).map(|v| v.rem_euclid(n)).collect())),
    }
}

/// Invariant factors (1s dropped) of coker([a | n·I]) — the iso-class of
/// (Z/n)^rows / (column span of a).
pub fn zn_cokernel_invariants(a: &IntMat, n: i128) -> Result<Vec<i128>> {
    let (rows, _) = shape(a);
    subquotient_invariants(&identity(rows), a, rows, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> IntMat {
        IntMat::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let s = snf(&a).unwrap();
        assert_eq!(s.diag, vec![2, 2, 156]);
        // U·A·V = D
        let d = mat_mul(&mat_mul(&s.u, &a).unwrap(), &s.v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(i, j), if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 2, 3]]);
        let k = kernel_basis(&a).unwrap();
        assert_eq!(shape(&k), (3, 2));
        for j in 0..2 {
            assert_eq!(mat_vec(&a, &k.col(j)).unwrap(), vec![0]);
        }
        let x = solve(&a, &[6]).unwrap().unwrap();
        assert_eq!(mat_vec(&a, &x).unwrap(), vec![6]);
        assert!(solve(&m(&[&[2]]), &[3]).unwrap().is_none());
    }

    #[test]
    fn zero_row_matrices_keep_their_shape() {
        let a = zeros(0, 3);
        let k = kernel_basis(&a).unwrap();
        assert_eq!(shape(&k), (3, 3));
        let s = solve(&a, &[]).unwrap().unwrap();
        assert_eq!(s, vec![0, 0, 0]);
    }

    #[test]
    fn cokernel_invariants_mod_4() {
        // [2] over Z/4: coker([2|4]) = Z/2
        assert_eq!(zn_cokernel_invariants(&m(&[&[2]]), 4).unwrap(), vec![2]);
        // identity: trivial cokernel
        assert_eq!(zn_cokernel_invariants(&identity(2), 4).unwrap(), Vec::<i128>::new());
        // zero 1x1: Z/4
        assert_eq!(zn_cokernel_invariants(&zeros(1, 1), 4).unwrap(), vec![4]);
    }

    #[test]
    fn kernel_gens_mod_4() {
        // kernel of multiplication by 2 on Z/4 is generated by 2
        let gens = zn_preimage_gens(&m(&[&[2]]), &zeros(1, 0), 4).unwrap();
        assert_eq!(gens, m(&[&[2]]));
        // kernel of the zero 2x2 matrix: the identity generators
        let gens = zn_preimage_gens(&zeros(2, 2), &zeros(2, 0), 4).unwrap();
        assert_eq!(shape(&gens), (2, 2));
    }

    #[test]
    fn exhaustive_kernel_check_mod_4() {
        // |ker|·|im| = 4^cols for small matrices, by enumeration
        let a = m(&[&[2, 1], &[0, 2]]);
        let mut ker = 0;
        let mut im = std::collections::BTreeSet::new();
        for x0 in 0..4i128 {
            for x1 in 0..4i128 {
                let v = [(2 * x0 + x1).rem_euclid(4), (2 * x1).rem_euclid(4)];
                if v == [0, 0] {
                    ker += 1;
                }
                im.insert(v);
            }
        }
        assert_eq!(ker * im.len(), 16);
        // and the computed kernel generators span exactly the enumerated kernel
        let gens = zn_preimage_gens(&a, &zeros(2, 0), 4).unwrap();
        for x0 in 0..4i128 {
            for x1 in 0..4i128 {
                let v = vec![x0, x1];
                let av = [(2 * x0 + x1).rem_euclid(4), (2 * x1).rem_euclid(4)];
                let in_ker = av == [0, 0];
                let spanned = zn_solve(&gens, &v, 4).unwrap().is_some();
                assert_eq!(in_ker, spanned);
            }
        }
    }
}
