//! Canonical desk-scale fixtures.
//!
//! Three coefficient rings, each with period-one or period-two complete
//! resolutions of cyclic modules:
//!
//! - `example_31`: k[x,y]/(xy) with the alternating x/y resolution of R/(x)
//!   (and of R/(y)); the pair whose plain tensor product has spurious even
//!   homology while the pinched product does not.
//! - `z4`: Z/4 with the multiplication-by-2 resolution of Z/2; the standard
//!   self-injective fixture for the injective-route checks.
//! - `square_zero`: k[x,y]/(x², y²) with the multiplication-by-x and -by-y
//!   resolutions of R/(x) and R/(y); their stable homology vanishes, so the
//!   pinched tensor product assembles a complete resolution of k.
//!
//! The characteristic defaults to 2 (all Koszul signs vanish); builders take
//! p so the sign conventions are exercised at p = 3 as well.

use crate::complex::{ChainComplex, Edge, Periodicity, Term};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::module::PresentedModule;
use crate::ring::{make_ring, Ring, RingSpec};
use crate::tate::CompleteResolution;

pub const FIXTURE_WINDOW: (i64, i64) = (-8, 8);

/// k[x,y]/(xy) at characteristic p, bound 12.
pub fn ring_xy(p: u64) -> Ring {
    make_ring(RingSpec::GradedQuotient {
        p,
        vars: vec![("x".into(), 1), ("y".into(), 1)],
        relations: vec!["x*y".into()],
        bound: 12,
    })
    .expect("fixture ring")
}

/// k[x,y]/(x², y²) at characteristic p, bound 12.
pub fn ring_square_zero(p: u64) -> Ring {
    make_ring(RingSpec::GradedQuotient {
        p,
        vars: vec![("x".into(), 1), ("y".into(), 1)],
        relations: vec!["x^2".into(), "y^2".into()],
        bound: 12,
    })
    .expect("fixture ring")
}

pub fn ring_z4() -> Ring {
    make_ring(RingSpec::IntMod { n: 4 }).expect("fixture ring")
}

/// Periodic rank-one complex with the entry pattern `entry(i)` into degree
/// i-1, generators of T_i in internal degree i (twist per period).
fn periodic_rank_one(
    ring: &Ring,
    period: i64,
    twist: i64,
    entry: impl Fn(i64) -> &'static str,
) -> ChainComplex {
    let (lo, hi) = FIXTURE_WINDOW;
    let graded = ring.is_graded();
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for i in lo..=hi {
        let deg = if graded { i } else { 0 };
        terms.push(Term::free(vec![deg]));
        if i > lo {
            let (rd, cd) = if graded { (vec![i - 1], vec![i]) } else { (vec![0], vec![0]) };
            diffs.push(
                Matrix::from_rows_str(ring, rd, cd, &[&[entry(i)]]).expect("fixture differential"),
            );
        }
    }
    ChainComplex::new(
        ring,
        lo,
        terms,
        diffs,
        Some(Periodicity { period, twist }),
        Edge::Cut,
        Edge::Cut,
    )
    .expect("fixture complex")
}

pub fn cyclic_module(ring: &Ring, relation: &str) -> PresentedModule {
    let rel = ring.parse_scalar(relation).expect("fixture relation");
    let deg = if ring.is_graded() {
        ring.homogeneous_degree(&rel).expect("homogeneous").unwrap_or(0)
    } else {
        0
    };
    PresentedModule::from_relations(
        Matrix::new(ring, vec![0], vec![deg], vec![rel]).expect("fixture module"),
    )
}

/// The complete resolution of R/(x) over k[x,y]/(xy): multiplication by x
/// into odd degrees and by y into even degrees; period 2, twist 2.
pub fn example_31_x(ring: &Ring) -> CompleteResolution {
    let t = periodic_rank_one(ring, 2, 2, |i| if i.rem_euclid(2) == 1 { "x" } else { "y" });
    let module = cyclic_module(ring, "x");
    let aug = Matrix::identity(ring, vec![0]);
    CompleteResolution::from_totally_acyclic(&t, module, aug).expect("fixture resolution")
}

/// The complete resolution of R/(y) over k[x,y]/(xy): the roles of x and y
/// swapped.
pub fn example_31_y(ring: &Ring) -> CompleteResolution {
    let t = periodic_rank_one(ring, 2, 2, |i| if i.rem_euclid(2) == 1 { "y" } else { "x" });
    let module = cyclic_module(ring, "y");
    let aug = Matrix::identity(ring, vec![0]);
    CompleteResolution::from_totally_acyclic(&t, module, aug).expect("fixture resolution")
}

/// (ring, resolution of R/(x), resolution of R/(x)) — the pair whose plain
/// tensor product has non-vanishing even homology.
pub fn fixture_example_31(p: u64) -> (Ring, CompleteResolution, CompleteResolution) {
    let ring = ring_xy(p);
    (ring.clone(), example_31_x(&ring), example_31_x(&ring))
}

/// (ring, resolution of Z/2 over Z/4).
pub fn fixture_z4() -> (Ring, CompleteResolution) {
    let ring = ring_z4();
    let t = periodic_rank_one(&ring, 1, 0, |_| "2");
    let module = cyclic_module(&ring, "2");
    let aug = Matrix::identity(&ring, vec![0]);
    (ring.clone(), CompleteResolution::from_totally_acyclic(&t, module, aug).expect("fixture"))
}

/// (ring, resolution of R/(x), resolution of R/(y)) over k[x,y]/(x², y²).
pub fn fixture_square_zero(p: u64) -> (Ring, CompleteResolution, CompleteResolution) {
    let ring = ring_square_zero(p);
    let tx = periodic_rank_one(&ring, 1, 1, |_| "x");
    let ty = periodic_rank_one(&ring, 1, 1, |_| "y");
    let crx = CompleteResolution::from_totally_acyclic(
        &tx,
        cyclic_module(&ring, "x"),
        Matrix::identity(&ring, vec![0]),
    )
    .expect("fixture");
    let cry = CompleteResolution::from_totally_acyclic(
        &ty,
        cyclic_module(&ring, "y"),
        Matrix::identity(&ring, vec![0]),
    )
    .expect("fixture");
    (ring, crx, cry)
}

/// The acyclic complex 0 → N = N → 0 with N in degrees `top` and `top - 1`.
pub fn fixture_sandwich(ring: &Ring, n: &PresentedModule, top: i64) -> ChainComplex {
    let term = Term::Presented(n.clone());
    ChainComplex::new(
        ring,
        top - 1,
        vec![term.clone(), term],
        vec![Matrix::identity(ring, n.gens().to_vec())],
        None,
        Edge::Zero,
        Edge::Zero,
    )
    .expect("sandwich complex")
}

/// A complete injective resolution of cr's module over a self-injective
/// backend: the shift of T by one, whose degree-0 kernel is the module.
pub fn injective_resolution_of(cr: &CompleteResolution) -> ChainComplex {
    crate::complex::shift(&cr.t, 1)
}

/// Everything the verification driver iterates over for one coefficient ring.
pub struct Fixture {
    pub name: &'static str,
    pub ring: Ring,
    pub cr_m: CompleteResolution,
    pub cr_n: CompleteResolution,
    pub self_injective: bool,
}

pub fn standard_fixtures(p: u64) -> Result<Vec<Fixture>> {
    let (rxy, crx31, _) = fixture_example_31(p);
    let cry31 = example_31_y(&rxy);
    let (rz4, crz4) = fixture_z4();
    let (rsq, crxs, crys) = fixture_square_zero(p);
    Ok(vec![
        Fixture {
            name: "example31",
            ring: rxy,
            cr_m: crx31,
            cr_n: cry31,
            self_injective: false,
        },
        Fixture {
            name: "z4",
            ring: rz4,
            cr_m: crz4.clone(),
            cr_n: crz4,
            self_injective: true,
        },
        Fixture {
            name: "square_zero",
            ring: rsq,
            cr_m: crxs,
            cr_n: crys,
            self_injective: true,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology;
    use crate::module::IsoClass;
    use crate::ops::{pinched_tensor, tensor_complex_truncated};
    use crate::tate::{tate_homology, validate_complete_resolution};

    #[test]
    fn all_fixtures_validate_on_the_standard_window() {
        for p in [2u64, 3] {
            for f in standard_fixtures(p).unwrap() {
                for cr in [&f.cr_m, &f.cr_n] {
                    let rep = validate_complete_resolution(cr, (-6, 6), 8).unwrap();
                    assert!(rep.passed(), "{} (p={p}): {:?}", f.name, rep.checks);
                    assert!(rep.minimal, "{} (p={p}) should be minimal", f.name);
                }
            }
        }
    }

    #[test]
    fn example_31_tensor_vs_pinched_even_degrees() {
        let (ring, crx, _) = fixture_example_31(2);
        // plain tensor product T ⊗ T: the class of x·e_{0,n} survives in even
        // degrees (window-verified)
        let tt = tensor_complex_truncated(&crx.t, &crx.t, (-4, 4), (-8, 8)).unwrap();
        let table = homology(&tt, (-2, 2), 6).unwrap();
        for i in [-2i64, 0, 2] {
            assert!(
                !table.class_at(i).unwrap().is_zero(),
                "H_{i}(T⊗T) should be nonzero: {}",
                table.render()
            );
        }
        // the pinched product has no even homology
        let boxed = pinched_tensor(&crx.t, &crx.t, (-4, 4)).unwrap();
        let table = homology(&boxed, (-3, 3), 6).unwrap();
        for i in [-2i64, 0, 2] {
            assert!(table.class_at(i).unwrap().is_zero(), "H_{i}(T⊠T) = {}", table.render());
        }
        // stable homology: zero even, one-dimensional odd
        let tor = tate_homology(&crx, &crx.module, (-3, 3), 6).unwrap();
        for i in -3..=3i64 {
            let cls = tor.class_at(i).unwrap();
            if i.rem_euclid(2) == 0 {
                assert!(cls.is_zero());
            } else {
                let IsoClass::Graded { dims, .. } = cls else { panic!() };
                assert_eq!(dims.get(&i), Some(&1));
            }
        }
        let _ = ring;
    }

    #[test]
    fn square_zero_pair_has_vanishing_tables() {
        let (_, crx, cry) = fixture_square_zero(2);
        let tor = tate_homology(&crx, &cry.module, (-4, 4), 6).unwrap();
        assert!(tor.is_zero(), "{}", tor.render());
    }

    #[test]
    fn sandwich_has_the_right_ends() {
        let (ring, crx, _) = fixture_example_31(2);
        let n = crx.module.clone();
        let sw0 = fixture_sandwich(&ring, &n, 0);
        // C_0 = N for top degree 0; Z_0 = N for top degree 1
        let c0 = crate::tate::coker_term(&sw0, 0).unwrap();
        assert!(c0.iso_class(4).unwrap().equals(&n.iso_class(4).unwrap()));
        let sw1 = fixture_sandwich(&ring, &n, 1);
        let z0 = crate::complex::soft_trunc_below(&sw1, 0).unwrap();
        let Term::Presented(z0m) = z0.term_at(0).unwrap() else { panic!() };
        assert!(z0m.iso_class(4).unwrap().equals(&n.iso_class(4).unwrap()));
        assert!(homology(&sw0, (-1, 0), 4).unwrap().is_zero());
    }
}
