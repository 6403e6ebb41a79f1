//! Mavlyutov duality `Δ ↦ Δ^∨ = [Δ*]` and regular/singular faces.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fine::Normalized;
use crate::lattice::{lattice_hull, points_in};
use crate::linalg::{inverse, lattice_basis_of_span, rank, to_rats, Coordinates, Int, IntVec, Rat, RationalVector};
use crate::polytope::{hull, FaceId, Polytope};

/// `[Δ*]`, the lattice hull of the polar.
pub fn mav_dual(n: &Normalized) -> Result<Polytope> {
    lattice_hull(n.polar()).ok_or(Error::OriginNotInterior)
}

/// `[[Δ*]*]`, the smallest pseudoreflexive polytope containing `Δ`.
pub fn pseudoreflexive_closure(n: &Normalized) -> Result<Polytope> {
    let dual = mav_dual(n)?;
    lattice_hull(&dual.polar()?).ok_or(Error::OriginNotInterior)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceKind {
    Regular,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceClass {
    pub face: FaceId,
    pub dim: usize,
    pub kind: FaceKind,
    /// `[Θ*]` has no lattice points at all.
    pub dual_hull_empty: bool,
    pub ordinary: bool,
    /// Integral distance from the origin, for facets.
    pub facet_distance: Option<Int>,
}

/// Regular iff `dim [Θ*] = d - dim Θ - 1`.
pub fn face_class(n: &Normalized, face: FaceId) -> Result<FaceClass> {
    let delta = n.delta();
    let d = delta.dim();
    let f = delta.faces().face(face);
    let k = f.dim();
    let dual = delta.dual_face(face)?;
    let hull_dual = lattice_hull(&dual);
    let kind = match &hull_dual {
        Some(h) if h.dim() + k + 1 == d => FaceKind::Regular,
        _ => FaceKind::Singular,
    };
    let facet_distance = if k + 1 == d { Some(n.facet_distance(f.facets()[0])) } else { None };
    Ok(FaceClass {
        face,
        dim: k,
        kind,
        dual_hull_empty: hull_dual.is_none(),
        ordinary: is_ordinary(delta, face),
        facet_distance,
    })
}

/// The linear form on `span(Θ)` equal to 1 on `Θ`, in a basis of `Z^d ∩ span(Θ)`.
fn unit_form(delta: &Polytope, face: FaceId) -> Vec<Rat> {
    let verts: Vec<IntVec> =
        delta.face_vertices(face).iter().map(|v| v.to_integers().expect("lattice polytope")).collect();
    let basis = lattice_basis_of_span(&verts);
    let coords = Coordinates::new(&basis.iter().map(|b| to_rats(b)).collect::<Vec<_>>()).expect("basis");
    let rows: Vec<Vec<Rat>> = verts.iter().map(|v| coords.of(&to_rats(v))).collect();
    let mut chosen: Vec<Vec<Rat>> = Vec::new();
    for r in &rows {
        chosen.push(r.clone());
        if rank(&chosen) < chosen.len() {
            chosen.pop();
        }
    }
    let inv = inverse(&chosen).expect("vertices span the face cone");
    // f solves chosen·f = 1
    (0..basis.len()).map(|i| inv[i].iter().fold(Rat::zero(), |a, x| a + x)).collect()
}

/// Every lattice point of the cone over `Θ` lies in some integer dilate `lΘ`.
///
/// The lattice points of that cone generate `Z^d ∩ span(Θ)`, so this holds
/// exactly when the form equal to 1 on `Θ` is integral on that lattice.
pub fn is_ordinary(delta: &Polytope, face: FaceId) -> bool {
    unit_form(delta, face).iter().all(|x| x.is_integer())
}

/// Bounded search: checks lattice points of the cone over `Θ` up to height `bound`.
pub fn ordinary_by_search(delta: &Polytope, face: FaceId, bound: u64) -> bool {
    let theta = delta.face_polytope(face);
    let mut pts = vec![RationalVector::zeros(delta.ambient_dim())];
    pts.extend(theta.scaled(&Rat::from_integer(Int::from(bound))).vertices().iter().cloned());
    let pyramid = hull(&pts).expect("nonempty");
    let dilates: Vec<Polytope> = (1..=bound).map(|l| theta.scaled(&Rat::from_integer(Int::from(l)))).collect();
    points_in(&pyramid).iter().all(|x| {
        let xv = RationalVector::from_integers(x);
        xv.is_zero() || dilates.iter().any(|p| p.contains(&xv))
    })
}

/// The height bound `(d+1)·max facet distance` used by the search variant.
pub fn search_bound(n: &Normalized) -> u64 {
    let d = n.dim() as u64;
    let m = (0..n.delta().facets().len()).map(|j| n.facet_distance(j)).max().unwrap_or_else(|| Int::from(1));
    (d + 1) * u64::try_from(m).unwrap_or(u64::MAX / (d + 1))
}

/// `Θ^∨ = [Θ*]` for a regular face.
pub fn face_dual(n: &Normalized, face: FaceId) -> Result<Polytope> {
    let c = face_class(n, face)?;
    if c.kind == FaceKind::Singular {
        return Err(Error::SingularFace);
    }
    Ok(lattice_hull(&n.delta().dual_face(face)?).expect("regular faces have lattice points"))
}

/// Singular facets with their integral distances `n_Θ`.
pub fn singular_facets(n: &Normalized) -> Result<Vec<(FaceId, Int)>> {
    let delta = n.delta();
    let mut out = Vec::new();
    for j in 0..delta.facets().len() {
        let id = delta.facet_face(j);
        if face_class(n, id)?.kind == FaceKind::Singular {
            out.push((id, n.facet_distance(j)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    fn poly(v: &[&[i64]]) -> Polytope {
        hull(&v.iter().map(|p| RationalVector::from_ints(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn reflexive_square_duality() {
        let n = Normalized::new(poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])).unwrap();
        let dual = mav_dual(&n).unwrap();
        assert_eq!(&dual, n.polar());
        for j in 0..4 {
            let id = n.delta().facet_face(j);
            let c = face_class(&n, id).unwrap();
            assert_eq!(c.kind, FaceKind::Regular);
            assert_eq!(c.facet_distance, Some(Int::from(1)));
            assert!(c.ordinary);
            let v = face_dual(&n, id).unwrap();
            assert_eq!(v.dim(), 0);
            assert!(dual.find_face(v.vertices()).is_some());
        }
    }

    #[test]
    fn closure_adds_vertex() {
        let n = Normalized::new(poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -2]])).unwrap();
        let c = pseudoreflexive_closure(&n).unwrap();
        let mut expected: Vec<RationalVector> =
            [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -2], [0, 0, -1]].iter().map(|p| RationalVector::from_ints(p)).collect();
        expected.sort();
        assert_eq!(c.vertices(), expected.as_slice());
    }

    #[test]
    fn non_ordinary_face() {
        // (0,0,1) is half the sum of the top triangle's vertices
        let p = poly(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 2], &[0, 0, -1]]);
        let top = p.find_face(&poly(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 2]]).vertices().to_vec()).unwrap();
        assert!(!is_ordinary(&p, top));
        for id in p.faces().ids() {
            if p.face(id).facets().is_empty() {
                continue;
            }
            assert_eq!(is_ordinary(&p, id), ordinary_by_search(&p, id, 6), "face {:?}", p.face(id).vertices());
        }
    }
}
