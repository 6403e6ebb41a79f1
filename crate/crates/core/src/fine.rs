//! Fine interior, its support, the canonical hull and Calabi-Yau classification.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{lattice_hull, points_in};
use crate::linalg::{Int, IntVec, Rat, RationalVector};
use crate::polytope::{FaceId, Halfspace, Polytope};

/// The Fine interior, kept distinct from "not computed".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FineInterior {
    Empty,
    Nonempty(Polytope),
}

impl FineInterior {
    pub fn polytope(&self) -> Option<&Polytope> {
        match self {
            FineInterior::Empty => None,
            FineInterior::Nonempty(p) => Some(p),
        }
    }

    /// The single lattice point, if the interior is one.
    pub fn lattice_point(&self) -> Option<IntVec> {
        let p = self.polytope()?;
        if p.dim() == 0 {
            p.vertices()[0].to_integers()
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalHull {
    Absent,
    Present(Polytope),
}

impl CanonicalHull {
    pub fn polytope(&self) -> Option<&Polytope> {
        match self {
            CanonicalHull::Absent => None,
            CanonicalHull::Present(p) => Some(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineResult {
    pub interior: FineInterior,
    /// Directions `n` in the cut set with `ord_FI(n) = ord_Δ(n) + 1`.
    pub support: Vec<IntVec>,
    pub canonical_hull: CanonicalHull,
    /// Translation moving a lattice-point Fine interior to the origin.
    pub translation: Option<IntVec>,
    /// Directions whose half-spaces cut out the Fine interior.
    pub cut_set: Vec<IntVec>,
}

fn require_lattice_full(delta: &Polytope) -> Result<()> {
    if !delta.is_full_dimensional() {
        return Err(Error::NotFullDimensional { dim: delta.dim(), ambient: delta.ambient_dim() });
    }
    if !delta.is_lattice() {
        return Err(Error::NonLatticeVertices);
    }
    Ok(())
}

/// Nonzero lattice points of `conv(0, g_1, ..., g_k)` over the simplicial pieces
/// `cone(g_1, ..., g_k)` of the vertex normal cones.
///
/// Every vertex of `conv(σ ∩ Z^d \ 0)` lies in one of these simplices, so the
/// set cuts out the same Fine interior as all of `Z^d \ 0`.
pub fn cut_set(delta: &Polytope) -> Result<Vec<IntVec>> {
    let mut set = BTreeSet::new();
    for id in delta.faces().of_dim(0).collect::<Vec<FaceId>>() {
        let cone = delta.normal_cone(id)?;
        for piece in cone.triangulate() {
            let mut pts = vec![RationalVector::zeros(delta.ambient_dim())];
            pts.extend(piece.iter().map(|g| RationalVector::from_integers(g)));
            let simplex = Polytope::hull(&pts)?;
            set.extend(points_in(&simplex).into_iter().filter(|x| x.iter().any(|c| !c.is_zero())));
        }
    }
    Ok(set.into_iter().collect())
}

/// `⋂_n {x : ⟨x,n⟩ >= ord_Δ(n) + shift}` over the given directions.
fn cut(delta: &Polytope, dirs: &[IntVec], shift: i64) -> Result<Option<Polytope>> {
    let ineqs: Vec<Halfspace> = dirs
        .iter()
        .map(|n| Halfspace { normal: n.clone(), offset: delta.ord(n) + Rat::from_integer(Int::from(shift)) })
        .collect();
    Polytope::from_inequalities(delta.ambient_dim(), &ineqs)
}

/// Fine interior of a full-dimensional lattice polytope.
pub fn fine(delta: &Polytope) -> Result<FineResult> {
    require_lattice_full(delta)?;
    let cut_set = cut_set(delta)?;
    let interior = match cut(delta, &cut_set, 1)? {
        None => FineInterior::Empty,
        Some(p) => FineInterior::Nonempty(p),
    };
    let (support, canonical_hull) = match interior.polytope() {
        None => (vec![], CanonicalHull::Absent),
        Some(fi) => {
            let support: Vec<IntVec> =
                cut_set.iter().filter(|n| fi.ord(n) == delta.ord(n) + Rat::one()).cloned().collect();
            let hull = match cut(delta, &support, 0) {
                Ok(Some(p)) => CanonicalHull::Present(p),
                _ => CanonicalHull::Absent,
            };
            (support, hull)
        }
    };
    let translation = interior.lattice_point().map(|p| p.iter().map(|x| -x).collect());
    Ok(FineResult { interior, support, canonical_hull, translation, cut_set })
}

/// The canonical hull `Δ^can`.
pub fn canonical_hull(delta: &Polytope) -> Result<Polytope> {
    let r = fine(delta)?;
    if r.interior == FineInterior::Empty {
        return Err(Error::EmptyFineInterior);
    }
    match r.canonical_hull {
        CanonicalHull::Present(p) => Ok(p),
        CanonicalHull::Absent => Err(Error::Unbounded),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    NoMinimalModel,
    MinimalNotCY,
    AlmostPseudoreflexive,
    Pseudoreflexive,
    Reflexive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::NoMinimalModel => "NoMinimalModel",
            Verdict::MinimalNotCY => "MinimalNotCY",
            Verdict::AlmostPseudoreflexive => "AlmostPseudoreflexive",
            Verdict::Pseudoreflexive => "Pseudoreflexive",
            Verdict::Reflexive => "Reflexive",
        }
    }

    pub fn is_almost_pseudoreflexive(self) -> bool {
        self >= Verdict::AlmostPseudoreflexive
    }

    pub fn is_pseudoreflexive(self) -> bool {
        self >= Verdict::Pseudoreflexive
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyClass {
    /// The strongest class that holds.
    pub verdict: Verdict,
    /// Dimension of the Fine interior, if it is nonempty.
    pub fine_interior_dim: Option<usize>,
    pub translation: Option<IntVec>,
    pub fine: FineResult,
}

/// `[[P*]*]` for a polytope with the origin in its interior.
fn double_dual_hull(delta: &Polytope) -> Result<Polytope> {
    let dual = lattice_hull(&delta.polar()?).ok_or(Error::OriginNotInterior)?;
    let back = dual.polar()?;
    lattice_hull(&back).ok_or(Error::OriginNotInterior)
}

/// Calabi-Yau classification of a full-dimensional lattice polytope.
pub fn classify(delta: &Polytope) -> Result<CyClass> {
    let fine = fine(delta)?;
    let fine_interior_dim = fine.interior.polytope().map(|p| p.dim());
    let verdict = match (&fine.interior, &fine.translation) {
        (FineInterior::Empty, _) => Verdict::NoMinimalModel,
        (_, None) => Verdict::MinimalNotCY,
        (_, Some(t)) => {
            let d0 = delta.translate(&RationalVector::from_integers(t));
            if d0.polar()?.is_lattice() {
                Verdict::Reflexive
            } else if double_dual_hull(&d0)?.vertices() == d0.vertices() {
                Verdict::Pseudoreflexive
            } else {
                Verdict::AlmostPseudoreflexive
            }
        }
    };
    Ok(CyClass { verdict, fine_interior_dim, translation: fine.translation.clone(), fine })
}

/// A lattice polytope whose Fine interior is exactly the origin, with its polar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    delta: Polytope,
    polar: Polytope,
}

impl Normalized {
    /// Checks that the Fine interior of `delta` is `{0}`.
    pub fn new(delta: Polytope) -> Result<Normalized> {
        let r = fine(&delta)?;
        match r.interior.lattice_point() {
            Some(p) if p.iter().all(|x| x.is_zero()) => {}
            _ => return Err(Error::NotNormalized),
        }
        let polar = delta.polar()?;
        Ok(Normalized { delta, polar })
    }

    /// Translates a polytope whose Fine interior is a lattice point so that it becomes the origin.
    pub fn translated(delta: &Polytope) -> Result<(Normalized, IntVec)> {
        let r = fine(delta)?;
        let t = match (&r.interior, r.translation) {
            (FineInterior::Empty, _) => return Err(Error::EmptyFineInterior),
            (_, None) => return Err(Error::NotAlmostPseudoreflexive),
            (_, Some(t)) => t,
        };
        let d0 = delta.translate(&RationalVector::from_integers(&t));
        let polar = d0.polar()?;
        Ok((Normalized { delta: d0, polar }, t))
    }

    /// Wraps a polytope already known to have Fine interior `{0}`, e.g. the dual of a pseudoreflexive one.
    pub(crate) fn assume(delta: Polytope) -> Result<Normalized> {
        let polar = delta.polar()?;
        Ok(Normalized { delta, polar })
    }

    pub fn delta(&self) -> &Polytope {
        &self.delta
    }

    pub fn polar(&self) -> &Polytope {
        &self.polar
    }

    pub fn dim(&self) -> usize {
        self.delta.dim()
    }

    pub fn is_reflexive(&self) -> bool {
        self.polar.is_lattice()
    }

    pub fn is_pseudoreflexive(&self) -> bool {
        double_dual_hull(&self.delta).is_ok_and(|p| p.vertices() == self.delta.vertices())
    }

    /// Integral distance from the origin to facet `j`.
    pub fn facet_distance(&self, j: usize) -> Int {
        -self.delta.facets()[j].offset.to_integer()
    }
}

/// `-ord_Δ(n) - 1` for a normalized polytope.
pub fn discrepancy(n: &Normalized, dir: &[Int]) -> Result<Rat> {
    if dir.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    if dir.len() != n.delta.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: n.delta.ambient_dim(), found: dir.len() });
    }
    Ok(-n.delta.ord(dir) - Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ints, rat};
    use crate::polytope::hull;

    fn poly(v: &[&[i64]]) -> Polytope {
        hull(&v.iter().map(|p| RationalVector::from_ints(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn empty_fine_interior() {
        let r = fine(&poly(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        assert_eq!(r.interior, FineInterior::Empty);
        assert_eq!(classify(&poly(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap().verdict, Verdict::NoMinimalModel);
    }

    #[test]
    fn reflexive_triangle() {
        let t = poly(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let c = classify(&t).unwrap();
        assert_eq!(c.verdict, Verdict::Reflexive);
        assert_eq!(c.translation, Some(ints(&[0, 0])));
        let n = Normalized::new(t).unwrap();
        let mut supp = c.fine.support.clone();
        supp.sort();
        let mut dual: Vec<IntVec> = points_in(n.polar()).into_iter().filter(|p| p.iter().any(|x| !x.is_zero())).collect();
        dual.sort();
        assert_eq!(supp, dual);
        for v in n.polar().vertices() {
            assert_eq!(discrepancy(&n, &v.to_integers().unwrap()).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(fine(&poly(&[&[0, 0], &[1, 1]])), Err(Error::NotFullDimensional { .. })));
        let half = poly(&[&[0, 0], &[1, 0], &[0, 1]]).scaled(&rat(1, 2));
        assert_eq!(fine(&half), Err(Error::NonLatticeVertices));
    }

    #[test]
    fn translated_normalization() {
        let t = poly(&[&[2, 1], &[1, 2], &[0, 0]]);
        let (n, shift) = Normalized::translated(&t).unwrap();
        assert_eq!(shift, ints(&[-1, -1]));
        assert!(n.is_reflexive());
    }
}
