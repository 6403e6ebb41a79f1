mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use stringy_core::cone::Cone;
use stringy_core::fine::{classify, Normalized, Verdict};
use stringy_core::lattice::{hilbert_basis, points_in};
use stringy_core::mavlyutov::{is_ordinary, mav_dual, ordinary_by_search, search_bound};
use stringy_core::measures::normalized_volume;
use stringy_core::stringy::{estr_general, mirror_test, pyramid_identity, stringy_report};
use stringy_core::wps::{estr_closed_x, estr_closed_xvee, wps_delta, wps_dual, WpsParams};
use stringy_core::{Error, RationalVector};

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn boundary_points(p: &stringy_core::Polytope) -> usize {
    points_in(p).len() - 1
}

#[test]
fn sixteen_polygons() {
    let polys = reflexive_polygons();
    assert_eq!(polys.len(), 16);
    let mut by_boundary = [0usize; 10];
    for p in &polys {
        by_boundary[boundary_points(p)] += 1;
    }
    assert_eq!(by_boundary[3..], [1, 3, 2, 4, 2, 3, 1]);
    // boundary points of a polygon and its dual add up to 12
    for p in &polys {
        let n = Normalized::new(p.clone()).unwrap();
        let dual = mav_dual(&n).unwrap();
        assert_eq!(boundary_points(p) + boundary_points(&dual), 12);
        assert_eq!(normalized_volume(p) + normalized_volume(&dual), r(12));
    }
}

#[test]
fn mirror_on_reflexive_corpus() {
    for m in corpus().iter().filter(|m| m.reflexive) {
        let n = Normalized::new(m.polytope.clone()).unwrap();
        let rep = mirror_test(&n).unwrap();
        assert!(rep.pass, "{}: {} vs {}", m.name, rep.e_str, rep.e_str_dual);
        let back = mav_dual(&Normalized::new(mav_dual(&n).unwrap()).unwrap()).unwrap();
        assert_eq!(back, m.polytope, "{}", m.name);
    }
}

#[test]
fn quintic_and_its_mirror() {
    let big = Normalized::new(newton_simplex(4)).unwrap();
    let small = Normalized::new(small_simplex(4)).unwrap();
    assert_eq!(estr_general(&big).unwrap(), r(-200));
    assert_eq!(estr_general(&small).unwrap(), r(200));
    assert_eq!(mav_dual(&big).unwrap().vertices(), small_simplex(4).vertices());
}

#[test]
fn k3_report() {
    let n = Normalized::new(k3_simplex()).unwrap();
    let rep = stringy_report(&n).unwrap();
    assert_eq!(rep.verdict, Verdict::Reflexive);
    assert_eq!(rep.e_str, r(24));
    assert!(rep.symmetry_ok && rep.polynomial);
    assert_eq!(rep.efun.eval(&r(1)).unwrap(), r(24));
}

#[test]
fn quint2_faces_are_not_all_ordinary() {
    let (n, _) = Normalized::translated(&quint2()).unwrap();
    let bound = search_bound(&n);
    let delta = n.delta();
    let mut extraordinary = 0;
    for id in delta.faces().ids() {
        let f = delta.face(id);
        if f.dim() == 0 || f.dim() == delta.dim() {
            continue;
        }
        let exact = is_ordinary(delta, id);
        assert_eq!(exact, ordinary_by_search(delta, id, bound));
        extraordinary += usize::from(!exact);
    }
    assert!(extraordinary > 0);
}

#[test]
fn hilbert_basis_generates() {
    let gens = vec![
        vec![BigInt::from(1), BigInt::from(0)],
        vec![BigInt::from(1), BigInt::from(3)],
    ];
    let c = Cone::new(2, &gens).unwrap();
    let basis = hilbert_basis(&c);
    let want: Vec<Vec<BigInt>> =
        [[1, 0], [1, 1], [1, 2], [1, 3]].iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    assert_eq!(basis, want);
}

#[test]
fn pyramids_over_reflexive_corpus() {
    for m in corpus().iter().filter(|m| m.reflexive) {
        let n = Normalized::new(m.polytope.clone()).unwrap();
        assert!(pyramid_identity(&n), "{}", m.name);
    }
}

#[test]
fn wps_l2_closed_forms_match_engine() {
    // d = 8: confirms the closed forms at l = 2, where the aggregate sign matters
    let p = WpsParams::new(3, 2, 2).unwrap();
    let delta = Normalized::new(wps_delta(&p).unwrap()).unwrap();
    assert_eq!(estr_general(&delta).unwrap(), estr_closed_x(&p));
    let dual = Normalized::new(wps_dual(&p).unwrap()).unwrap();
    assert_eq!(estr_general(&dual).unwrap(), estr_closed_xvee(&p));
}

#[test]
fn error_cases() {
    let flat = poly(&[&[0, 0], &[1, 1], &[2, 2]]);
    assert!(matches!(classify(&flat), Err(Error::NotFullDimensional { dim: 1, ambient: 2 })));
    let unit = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
    assert_eq!(classify(&unit).unwrap().verdict, Verdict::NoMinimalModel);
    assert_eq!(Normalized::translated(&unit).unwrap_err(), Error::EmptyFineInterior);
    assert_eq!(Normalized::translated(&corti_golyshev()).unwrap_err(), Error::NotAlmostPseudoreflexive);
    let half = stringy_core::hull(&[
        RationalVector::from_ints(&[-1, -1]),
        RationalVector::new(vec![BigRational::new(3.into(), 2.into()), r(0)]),
        RationalVector::from_ints(&[0, 1]),
    ])
    .unwrap();
    assert_eq!(classify(&half).unwrap_err(), Error::NonLatticeVertices);
}
