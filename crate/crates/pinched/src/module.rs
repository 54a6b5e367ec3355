//! Finitely presented modules and the submodule machinery.
//!
//! A module is the cokernel of its relation matrix. Over the field backends
//! every question is answered one internal-degree slice at a time with F_p
//! linear algebra; over Z/n modules are integer lattices between n·Z^m and
//! Z^m and questions reduce to Smith normal form. Kernels of maps between
//! graded free modules are genuine submodules here: their minimal generators
//! are collected degree by degree, which is what the free-resolution builder
//! and the dual/Hom constructions consume.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::fp::{self, FpMat};
use crate::linalg::int::{self, IntMat};
use crate::matrix::{slice_offsets, Matrix};
use crate::ring::Ring;

/// A graded free module, recorded by its generator degrees (all zero over
/// ungraded backends).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub degs: Vec<i64>,
}

impl FreeModule {
    pub fn rank(&self) -> usize {
        self.degs.len()
    }
}

/// A finitely presented module: the cokernel of `relations`, whose rows are
/// indexed by the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedModule {
    ring: Ring,
    relations: Matrix,
}

impl PresentedModule {
    pub fn free(ring: &Ring, degs: Vec<i64>) -> Self {
        PresentedModule {
            ring: ring.clone(),
            relations: Matrix::zero(ring, degs, Vec::new()),
        }
    }

    pub fn from_relations(relations: Matrix) -> Self {
        PresentedModule { ring: relations.ring().clone(), relations }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[i64] {
        self.relations.row_degs()
    }

    pub fn num_gens(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.cols() == 0
    }

    /// Dimension of the degree-`d` slice of the module (field backends).
    pub fn slice_dim(&self, d: i64) -> Result<usize> {
        let offs = slice_offsets(&self.ring, self.gens(), d)?;
        let total = offs.last().copied().unwrap_or(0);
        if self.relations.cols() == 0 {
            return Ok(total);
        }
        Ok(total - self.relations.slice(d)?.rank())
    }

    /// Iso-class descriptor, examined over internal degrees `[min gen,
    /// min gen + bound]` for graded backends.
    pub fn iso_class(&self, bound: i64) -> Result<IsoClass> {
        if self.ring.is_int_mod() {
            let inv = self.relations.smith_invariants()?;
            return Ok(IsoClass::Factors(inv));
        }
        if !self.ring.is_graded() {
            return Ok(IsoClass::Dim(self.slice_dim(0)?));
        }
        if self.num_gens() == 0 {
            return Ok(IsoClass::Graded { dims: BTreeMap::new(), range: None });
        }
        let lo = *self.gens().iter().min().unwrap();
        let hi = *self.gens().iter().max().unwrap() + bound;
        let mut dims = BTreeMap::new();
        for d in lo..=hi {
            let dim = self.slice_dim(d)?;
            if dim > 0 {
                dims.insert(d, dim);
            }
        }
        Ok(IsoClass::Graded { dims, range: Some((lo, hi)) })
    }
}

/// Isomorphism-class descriptor of a module (or homology group): a plain
/// dimension over a prime field, per-internal-degree dimensions over a graded
/// quotient (with the examined window), or invariant factors over Z/n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoClass {
    Dim(usize),
    Graded {
        dims: BTreeMap<i64, usize>,
        /// Window of internal degrees examined; `None` means the descriptor
        /// is complete (e.g. the zero module with no generators).
        range: Option<(i64, i64)>,
    },
    Factors(Vec<u64>),
}

impl IsoClass {
    pub fn is_zero(&self) -> bool {
        match self {
            IsoClass::Dim(d) => *d == 0,
            IsoClass::Graded { dims, .. } => dims.values().all(|&v| v == 0),
            IsoClass::Factors(f) => f.is_empty(),
        }
    }

    /// Classwise equality; graded descriptors are compared on the
    /// intersection of their examined windows.
    pub fn equals(&self, other: &IsoClass) -> bool {
        match (self, other) {
            (IsoClass::Dim(a), IsoClass::Dim(b)) => a == b,
            (IsoClass::Factors(a), IsoClass::Factors(b)) => a == b,
            (
                IsoClass::Graded { dims: da, range: ra },
                IsoClass::Graded { dims: db, range: rb },
            ) => {
                let restrict = |dims: &BTreeMap<i64, usize>, r: Option<(i64, i64)>| {
                    dims.iter()
                        .filter(|(d, _)| r.is_none_or(|(lo, hi)| **d >= lo && **d <= hi))
                        .map(|(d, v)| (*d, *v))
                        .collect::<BTreeMap<_, _>>()
                };
                let common = match (ra, rb) {
                    (None, None) => None,
                    (Some(r), None) | (None, Some(r)) => Some(*r),
                    (Some((a0, a1)), Some((b0, b1))) => Some(((*a0).max(*b0), (*a1).min(*b1))),
                };
                restrict(da, common) == restrict(db, common)
            }
            _ => false,
        }
    }

    pub fn render(&self) -> String {
        match self {
            IsoClass::Dim(d) => format!("dim {d}"),
            IsoClass::Factors(f) => {
                if f.is_empty() {
                    "0".to_string()
                } else {
                    format!(
                        "Z/{}",
                        f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" + Z/")
                    )
                }
            }
            IsoClass::Graded { dims, .. } => {
                if self.is_zero() {
                    "0".to_string()
                } else {
                    dims.iter()
                        .map(|(d, v)| format!("{v}@{d}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            }
        }
    }
}

/// Reconstruct a column matrix (one generator) from its slice-`d` coordinate
/// vector over the free module with generator degrees `degs`.
pub fn column_from_slice_vec(ring: &Ring, degs: &[i64], d: i64, v: &[u64]) -> Result<Matrix> {
    let offs = slice_offsets(ring, degs, d)?;
    let mut entries = Vec::with_capacity(degs.len());
    for (i, &g) in degs.iter().enumerate() {
        let basis = ring.slice_basis(d - g)?.to_vec();
        let mut acc = ring.zero();
        for (mi, mono) in basis.iter().enumerate() {
            let c = v[offs[i] + mi];
            if c != 0 {
                let mut term = ring.zero();
                // c * mono as a scalar
                let mono_scalar = {
                    let mut s = ring.one();
                    for (vi, &e) in mono.iter().enumerate() {
                        let name = ring.var_names()[vi].clone();
                        for _ in 0..e {
                            s = ring.mul(&s, &ring.var(&name)?)?;
                        }
                    }
                    s
                };
                for _ in 0..c {
                    term = ring.add(&term, &mono_scalar);
                }
                acc = ring.add(&acc, &term);
            }
        }
        entries.push(acc);
    }
    Matrix::new(ring, degs.to_vec(), vec![d], entries)
}

/// Minimal generators of the submodule `{v in source : m·v ∈ im(target_rels)}`
/// of the free source module of `m`, collected for internal degrees up to
/// `max_deg` (field backends) or exactly (Z/n).
///
/// Returns a matrix whose columns are the generators; its column degrees are
/// the generator degrees. Over non-Artinian graded rings the generator list
/// is complete only for the degrees examined; callers record or verify this.
pub fn kernel_submodule_gens(
    m: &Matrix,
    target_rels: Option<&Matrix>,
    max_deg: i64,
) -> Result<Matrix> {
    let ring = m.ring().clone();
    if ring.is_int_mod() {
        let n = ring.modulus().unwrap() as i128;
        let rels: IntMat = match target_rels {
            Some(w) => w.to_int()?,
            None => int::zeros(m.rows(), 0),
        };
        let gens = int::zn_preimage_gens(&m.to_int()?, &rels, n)?;
        return Ok(Matrix::from_int(&ring, &gens));
    }
    let src_degs = m.col_degs().to_vec();
    let mut gens = Matrix::zero(&ring, src_degs.clone(), Vec::new());
    if src_degs.is_empty() {
        return Ok(gens);
    }
    let dmin = *src_degs.iter().min().unwrap();
    // every slice request must stay within the ring bound, for source and
    // target generators and for relation columns alike
    let feasible = {
        let bound = ring.degree_bound().unwrap_or(0);
        let mut labels: Vec<i64> = src_degs.clone();
        labels.extend_from_slice(m.row_degs());
        if let Some(w) = target_rels {
            labels.extend_from_slice(w.col_degs());
        }
        bound + labels.iter().min().copied().unwrap_or(0)
    };
    let max_deg = if ring.is_graded() { max_deg.min(feasible) } else { max_deg };
    let mut chosen: Vec<Matrix> = Vec::new();
    for d in dmin..=max_deg {
        let md = m.slice(d)?;
        let wd = match target_rels {
            Some(w) => w.slice(d)?,
            None => FpMat::zero(ring.prime().unwrap(), md.rows, 0),
        };
        let kd = fp::preimage_basis(&md, &wd);
        if kd.cols == 0 {
            continue;
        }
        // span of the already-chosen generators inside this slice
        let prior = gens.slice(d)?;
        let mut span = prior;
        for j in 0..kd.cols {
            let cand = kd.col(j);
            if fp::in_span(&span, &cand) {
                continue;
            }
            let col = column_from_slice_vec(&ring, &src_degs, d, &cand)?;
            span = span.hstack(&FpMat::from_cols(span.p, span.rows, &[cand]));
            chosen.push(col);
        }
        if !chosen.is_empty() {
            // rebuild the generator matrix including the new columns
            let col_degs: Vec<i64> = chosen.iter().map(|c| c.col_degs()[0]).collect();
            let mut g = Matrix::zero(&ring, src_degs.clone(), col_degs);
            for (j, c) in chosen.iter().enumerate() {
                g.paste(0, j, c);
            }
            gens = g;
        }
    }
    Ok(gens)
}

/// Degree cap up to which kernel generators are searched: complete for
/// (detectably) Artinian graded rings, bound-limited otherwise.
pub fn kernel_search_cap(ring: &Ring, src_degs: &[i64]) -> i64 {
    if src_degs.is_empty() {
        return 0;
    }
    let min = *src_degs.iter().min().unwrap();
    let max = *src_degs.iter().max().unwrap();
    match ring.artinian_top_degree() {
        Some(top) => max + top,
        None => min + ring.degree_bound().unwrap_or(0),
    }
}

/// Solve `a·x + rels·w = b` where `b` is a column of homogeneous entries;
/// returns the column `x` expressed over `a`'s column degrees, if solvable.
pub fn solve_in_presented(a: &Matrix, rels: Option<&Matrix>, b: &Matrix) -> Result<Option<Matrix>> {
    let ring = a.ring().clone();
    assert_eq!(b.cols(), 1, "solve_in_presented expects a single column");
    if ring.is_int_mod() {
        let n = ring.modulus().unwrap() as i128;
        let stacked = match rels {
            Some(w) => int::hstack(&a.to_int()?, &w.to_int()?),
            None => a.to_int()?,
        };
        let bi = b.to_int()?;
        let bv: Vec<i128> = (0..b.rows()).map(|i| bi.get(i, 0)).collect();
        match int::zn_solve(&stacked, &bv, n)? {
            None => return Ok(None),
            Some(x) => {
                let x: Vec<i128> = x.into_iter().take(a.cols()).collect();
                let xi = int::cols_to_mat(a.cols(), &[x]);
                return Ok(Some(Matrix::from_int(&ring, &xi)));
            }
        }
    }
    let d = b.col_degs()[0];
    let ad = a.slice(d)?;
    let stacked = match rels {
        Some(w) => ad.hstack(&w.slice(d)?),
        None => ad,
    };
    let bd = b.slice(d)?;
    let bv = bd.col(0);
    let Some(x) = stacked.solve(&bv) else {
        return Ok(None);
    };
    // reconstruct the first block as ring elements
    let offs = slice_offsets(&ring, a.col_degs(), d)?;
    let take = *offs.last().unwrap();
    let col = column_from_slice_vec(&ring, a.col_degs(), d, &x[..take])?;
    Ok(Some(col))
}

/// Is the element (a column over the module's generators) zero in the module?
pub fn is_zero_in_module(m: &PresentedModule, elem: &Matrix) -> Result<bool> {
    if elem.is_zero() {
        return Ok(true);
    }
    if m.relations().cols() == 0 {
        return Ok(false);
    }
    Ok(solve_in_presented(m.relations(), None, elem)?.is_some())
}

/// Does `f` (a matrix on generators) define a module map `a -> b`? It must
/// send every relation of `a` into the relations of `b`.
pub fn is_well_defined_map(a: &PresentedModule, b: &PresentedModule, f: &Matrix) -> Result<bool> {
    let fr = f.compose(a.relations())?;
    for j in 0..fr.cols() {
        let col = column_of(&fr, j)?;
        if !is_zero_in_module(b, &col)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn column_of(m: &Matrix, j: usize) -> Result<Matrix> {
    let ring = m.ring().clone();
    let mut col = Matrix::zero(&ring, m.row_degs().to_vec(), vec![m.col_degs()[j]]);
    for i in 0..m.rows() {
        col.set(i, 0, m.entry(i, j).clone())?;
    }
    Ok(col)
}

/// Iso-class of the kernel of the induced map `a -> b` given by `f`.
pub fn induced_kernel_class(
    a: &PresentedModule,
    b: &PresentedModule,
    f: &Matrix,
    bound: i64,
) -> Result<IsoClass> {
    let ring = a.ring().clone();
    if ring.is_int_mod() {
        let n = ring.modulus().unwrap() as i128;
        let l = int::zn_preimage_gens(&f.to_int()?, &b.relations().to_int()?, n)?;
        let inv = int::subquotient_invariants(&l, &a.relations().to_int()?, a.num_gens(), n)?;
        return Ok(IsoClass::Factors(inv.into_iter().map(|v| v as u64).collect()));
    }
    graded_class(&ring, a.gens(), bound, |d| {
        let pre = fp::preimage_basis(&f.slice(d)?, &b.relations().slice(d)?);
        Ok(pre.cols - a.relations().slice(d)?.rank())
    })
}

/// Iso-class of the cokernel of the induced map `a -> b` given by `f`.
pub fn induced_cokernel_class(
    _a: &PresentedModule,
    b: &PresentedModule,
    f: &Matrix,
    bound: i64,
) -> Result<IsoClass> {
    let ring = b.ring().clone();
    if ring.is_int_mod() {
        let n = ring.modulus().unwrap() as i128;
        let stacked = int::hstack(&f.to_int()?, &b.relations().to_int()?);
        let inv = int::zn_cokernel_invariants(&stacked, n)?;
        return Ok(IsoClass::Factors(inv.into_iter().map(|v| v as u64).collect()));
    }
    graded_class(&ring, b.gens(), bound, |d| {
        let total = slice_offsets(&ring, b.gens(), d)?.last().copied().unwrap_or(0);
        let img = f.slice(d)?.hstack(&b.relations().slice(d)?);
        Ok(total - img.rank())
    })
}

pub(crate) fn graded_class(
    ring: &Ring,
    gens: &[i64],
    bound: i64,
    mut dim_at: impl FnMut(i64) -> Result<usize>,
) -> Result<IsoClass> {
    if !ring.is_graded() {
        return Ok(IsoClass::Dim(dim_at(0)?));
    }
    if gens.is_empty() {
        return Ok(IsoClass::Graded { dims: BTreeMap::new(), range: None });
    }
    let lo = *gens.iter().min().unwrap();
    let hi = *gens.iter().max().unwrap() + bound;
    let mut dims = BTreeMap::new();
    for d in lo..=hi {
        let dim = dim_at(d)?;
        if dim > 0 {
            dims.insert(d, dim);
        }
    }
    Ok(IsoClass::Graded { dims, range: Some((lo, hi)) })
}

/// Is the induced map `a -> b` given by `f` bijective? Over graded backends
/// this is verified on all slices in the examined window.
pub fn is_induced_iso(
    a: &PresentedModule,
    b: &PresentedModule,
    f: &Matrix,
    bound: i64,
) -> Result<bool> {
    if !is_well_defined_map(a, b, f)? {
        return Ok(false);
    }
    let ring = a.ring().clone();
    if ring.is_int_mod() {
        let n = ring.modulus().unwrap() as i128;
        // surjective: image + relations fill the target
        let stacked = int::hstack(&f.to_int()?, &b.relations().to_int()?);
        if !int::zn_cokernel_invariants(&stacked, n)?.is_empty() {
            return Ok(false);
        }
        // injective: preimage of target relations equals source relations
        let l = int::zn_preimage_gens(&f.to_int()?, &b.relations().to_int()?, n)?;
        let inv = int::subquotient_invariants(&l, &a.relations().to_int()?, a.num_gens(), n)?;
        return Ok(inv.is_empty());
    }
    let degs: Vec<i64> = a.gens().iter().chain(b.gens().iter()).copied().collect();
    if degs.is_empty() {
        return Ok(true);
    }
    let lo = *degs.iter().min().unwrap();
    let hi = *degs.iter().max().unwrap() + if ring.is_graded() { bound } else { 0 };
    for d in lo..=hi {
        let fd = f.slice(d)?;
        let wa = a.relations().slice(d)?;
        let wb = b.relations().slice(d)?;
        let sdim = fd.cols - wa.rank();
        let tdim = fd.rows - wb.rank();
        if sdim != tdim {
            return Ok(false);
        }
        // injective on the slice
        let pre = fp::preimage_basis(&fd, &wb);
        if pre.cols != wa.rank() {
            return Ok(false);
        }
        // surjective on the slice
        if fd.hstack(&wb).rank() - wb.rank() != tdim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tensor product of presented modules: generators are pairs (a-major), and
/// relations come from both factors.
pub fn tensor_modules(a: &PresentedModule, b: &PresentedModule) -> Result<PresentedModule> {
    let ring = a.ring().clone();
    if ring != *b.ring() {
        return Err(Error::RingMismatch);
    }
    let ia = Matrix::identity(&ring, a.gens().to_vec());
    let ib = Matrix::identity(&ring, b.gens().to_vec());
    let ra = a.relations().kron(&ib)?;
    let rb = ia.kron(b.relations())?;
    let gens: Vec<i64> = ia.kron(&ib)?.row_degs().to_vec();
    let mut rel = Matrix::zero(&ring, gens, [ra.col_degs(), rb.col_degs()].concat());
    rel.paste(0, 0, &ra);
    rel.paste(0, ra.cols(), &rb);
    Ok(PresentedModule::from_relations(rel))
}

/// The dual module Hom(M, R): returns the presented dual together with the
/// embedding of its generators into the dual free module of M's generators
/// (columns of `embed` are functionals on the generators of M).
pub fn dual_module(m: &PresentedModule) -> Result<(PresentedModule, Matrix)> {
    let ring = m.ring().clone();
    let rt = m.relations().dual();
    let cap = kernel_search_cap(&ring, rt.col_degs());
    let embed = kernel_submodule_gens(&rt, None, cap)?;
    let relcap = kernel_search_cap(&ring, embed.col_degs());
    let rels = kernel_submodule_gens(&embed, None, relcap)?;
    let dual = PresentedModule::from_relations(rels);
    Ok((dual, embed))
}

/// Hom(A, B) as a presented module, together with its realization: the
/// embedding of its generators into the ambient A-gens-dual ⊗ B-gens free
/// module (index order: A-generator major), and the ambient relations.
pub struct HomModule {
    pub module: PresentedModule,
    pub embed: Matrix,
    pub ambient_rels: Matrix,
}

pub fn hom_modules(a: &PresentedModule, b: &PresentedModule) -> Result<HomModule> {
    let ring = a.ring().clone();
    if ring != *b.ring() {
        return Err(Error::RingMismatch);
    }
    let dual_a_degs: Vec<i64> = a.gens().iter().map(|d| -d).collect();
    let ia_dual = Matrix::identity(&ring, dual_a_degs);
    // ambient = A-gens-dual tensor F0(B); relations = id ⊗ rel_B
    let ambient_rels = ia_dual.kron(b.relations())?;
    // compatibility with A's relations: phi ∘ rel_A = 0
    let kappa = a.relations().dual().kron(&Matrix::identity(&ring, b.gens().to_vec()))?;
    let dual_ra_degs: Vec<i64> = a.relations().col_degs().iter().map(|d| -d).collect();
    let target_rels = Matrix::identity(&ring, dual_ra_degs).kron(b.relations())?;
    let cap = kernel_search_cap(&ring, kappa.col_degs());
    let embed = kernel_submodule_gens(&kappa, Some(&target_rels), cap)?;
    let relcap = kernel_search_cap(&ring, embed.col_degs());
    let rels = kernel_submodule_gens(&embed, Some(&ambient_rels), relcap)?;
    Ok(HomModule {
        module: PresentedModule::from_relations(rels),
        embed,
        ambient_rels,
    })
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
            bound: 12,
        })
        .unwrap()
    }

    fn r_mod_x(r: &Ring) -> PresentedModule {
        let rel = Matrix::from_rows_str(r, vec![0], vec![1], &[&["x"]]).unwrap();
        PresentedModule::from_relations(rel)
    }

    #[test]
    fn kernel_submodule_of_mult_x() {
        let r = xy_ring();
        // ker(x·: R -> R) = (y), one generator in degree 1
        let m = Matrix::from_rows_str(&r, vec![-1], vec![0], &[&["x"]]).unwrap();
        let k = kernel_submodule_gens(&m, None, 6).unwrap();
        assert_eq!(k.col_degs(), &[1]);
        assert_eq!(*k.entry(0, 0), r.parse_scalar("y").unwrap());
        assert!(m.compose(&k).unwrap().is_zero());
    }

    #[test]
    fn dual_of_r_mod_x() {
        let r = xy_ring();
        let m = r_mod_x(&r);
        let (dual, embed) = dual_module(&m).unwrap();
        // M* = (y) = R/(x) shifted by one
        assert_eq!(embed.col_degs(), &[1]);
        assert_eq!(dual.gens(), &[1]);
        assert_eq!(dual.relations().cols(), 1);
        let cls = dual.iso_class(4).unwrap();
        let IsoClass::Graded { dims, .. } = cls else { panic!() };
        assert_eq!(dims.get(&1), Some(&1));
        assert_eq!(dims.get(&2), Some(&1));
    }

    #[test]
    fn iso_class_of_quotients() {
        let r = xy_ring();
        let m = r_mod_x(&r);
        let cls = m.iso_class(3).unwrap();
        let IsoClass::Graded { dims, range } = cls else { panic!() };
        assert_eq!(range, Some((0, 3)));
        assert_eq!(dims.into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 1), (2, 1), (3, 1)]);

        let z4 = make_ring(RingSpec::IntMod { n: 4 }).unwrap();
        let rel = Matrix::from_rows_str(&z4, vec![0], vec![0], &[&["2"]]).unwrap();
        let m = PresentedModule::from_relations(rel);
        assert_eq!(m.iso_class(0).unwrap(), IsoClass::Factors(vec![2]));
    }

    #[test]
    fn tensor_of_cyclics() {
        let r = xy_ring();
        let mx = r_mod_x(&r);
        let t = tensor_modules(&mx, &mx).unwrap();
        // R/(x) ⊗ R/(x) = R/(x)
        assert!(t.iso_class(4).unwrap().equals(&mx.iso_class(4).unwrap()));
    }

    #[test]
    fn hom_of_z2_into_z2_over_z4() {
        let z4 = make_ring(RingSpec::IntMod { n: 4 }).unwrap();
        let rel = Matrix::from_rows_str(&z4, vec![0], vec![0], &[&["2"]]).unwrap();
        let m = PresentedModule::from_relations(rel);
        let h = hom_modules(&m, &m).unwrap();
        // Hom(Z/2, Z/2) = Z/2
        assert_eq!(h.module.iso_class(0).unwrap(), IsoClass::Factors(vec![2]));
    }

    #[test]
    fn induced_classes_detect_kernels() {
        let z4 = make_ring(RingSpec::IntMod { n: 4 }).unwrap();
        let free = PresentedModule::free(&z4, vec![0]);
        let two = Matrix::from_rows_str(&z4, vec![0], vec![0], &[&["2"]]).unwrap();
        // multiplication by 2 on Z/4: kernel and cokernel are both Z/2
        let k = induced_kernel_class(&free, &free, &two, 0).unwrap();
        let c = induced_cokernel_class(&free, &free, &two, 0).unwrap();
        assert_eq!(k, IsoClass::Factors(vec![2]));
        assert_eq!(c, IsoClass::Factors(vec![2]));
        assert!(!is_induced_iso(&free, &free, &two, 0).unwrap());
        let id = Matrix::identity(&z4, vec![0]);
        assert!(is_induced_iso(&free, &free, &id, 0).unwrap());
    }
}
