//! Stringy E-functions and stringy Euler numbers of canonical Calabi-Yau models.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fine::{Normalized, Verdict};
use crate::genfun::{r_cone, RationalFunction};
use crate::linalg::{Int, IntVec, Rat};
use crate::mavlyutov::{face_dual, face_class, mav_dual, singular_facets, FaceKind};
use crate::measures::{e_theta, normalized_volume};
use crate::poly::UPolynomial;
use crate::polytope::{FaceId, Polytope};

fn sign(e: usize) -> Rat {
    if e % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn first_vertex(p: &Polytope, id: FaceId) -> IntVec {
    let v = p.face(id).vertices()[0];
    p.vertices()[v].to_integers().expect("lattice polytope")
}

fn face_volume(p: &Polytope, id: FaceId) -> Rat {
    normalized_volume(&p.face_polytope(id))
}

/// Faces of dimension at least 1, top face included.
fn positive_faces(p: &Polytope) -> Vec<FaceId> {
    p.faces().ids().filter(|&id| p.face(id).dim() >= 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTerm {
    pub face: FaceId,
    pub dim: usize,
    pub volume: Rat,
    /// `v(σ^Θ ∩ Δ*)`.
    pub cone_volume: Rat,
    pub contribution: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Integrality {
    Integer,
    Denominator(Int),
}

impl Integrality {
    pub fn of(x: &Rat) -> Integrality {
        if x.is_integer() {
            Integrality::Integer
        } else {
            Integrality::Denominator(x.denom().clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringyReport {
    pub verdict: Verdict,
    pub e_str: Rat,
    pub per_face_terms: Vec<FaceTerm>,
    pub efun: RationalFunction,
    /// `u^(d-1) E(1/u) = E(u)`.
    pub symmetry_ok: bool,
    pub polynomial: bool,
    pub integrality: Integrality,
}

/// Strongest class of a normalized polytope.
pub fn verdict(n: &Normalized) -> Verdict {
    if n.is_reflexive() {
        Verdict::Reflexive
    } else if n.is_pseudoreflexive() {
        Verdict::Pseudoreflexive
    } else {
        Verdict::AlmostPseudoreflexive
    }
}

fn face_term(delta: &Polytope, id: FaceId) -> Result<FaceTerm> {
    let k = delta.face(id).dim();
    let volume = face_volume(delta, id);
    let m: IntVec = first_vertex(delta, id).iter().map(|x| -x).collect();
    let cone_volume = normalized_volume(&delta.normal_cone(id)?.truncation(&m)?);
    let contribution = sign(k - 1) * &volume * &cone_volume;
    Ok(FaceTerm { face: id, dim: k, volume, cone_volume, contribution })
}

/// Per-face terms `(-1)^(dim Θ - 1) v(Θ) v(σ^Θ ∩ Δ*)`.
pub fn face_terms(n: &Normalized) -> Result<Vec<FaceTerm>> {
    let delta = n.delta();
    positive_faces(delta).into_par_iter().map(|id| face_term(delta, id)).collect()
}

/// `e_str` as a sum over all faces of dimension at least 1.
pub fn estr_general(n: &Normalized) -> Result<Rat> {
    Ok(face_terms(n)?.iter().fold(Rat::zero(), |acc, t| acc + &t.contribution))
}

/// `E_str(X; u, 1) = Σ E(Θ,u) R(σ^Θ, -m, u) (1-u)^(d - dim Θ)`.
pub fn efun_u(n: &Normalized) -> Result<RationalFunction> {
    let delta = n.delta();
    let d = delta.dim();
    let terms: Vec<RationalFunction> = positive_faces(delta)
        .into_par_iter()
        .map(|id| {
            let k = delta.face(id).dim();
            let e = e_theta(&delta.face_polytope(id))?;
            let m: IntVec = first_vertex(delta, id).iter().map(|x| -x).collect();
            let r = r_cone(&delta.normal_cone(id)?, &m, true)?;
            let f = UPolynomial::from_ints(&[1, -1]).pow(d - k);
            Ok(&r * &RationalFunction::from_poly(&e * &f))
        })
        .collect::<Result<_>>()?;
    Ok(terms.iter().fold(RationalFunction::zero(), |acc, t| &acc + t))
}

/// `u^(d-1) E(1/u) = E(u)`.
pub fn is_symmetric(efun: &RationalFunction, d: usize) -> bool {
    &efun.reciprocal().mul_monomial(d as i64 - 1) == efun
}

pub fn stringy_report(n: &Normalized) -> Result<StringyReport> {
    let per_face_terms = face_terms(n)?;
    let e_str = per_face_terms.iter().fold(Rat::zero(), |acc, t| acc + &t.contribution);
    let efun = efun_u(n)?;
    Ok(StringyReport {
        verdict: verdict(n),
        symmetry_ok: is_symmetric(&efun, n.dim()),
        polynomial: efun.is_polynomial(),
        integrality: Integrality::of(&e_str),
        e_str,
        per_face_terms,
        efun,
    })
}

/// `Σ_{k=1}^{d-2} (-1)^(k-1) Σ_{dim Θ = k} v(Θ) v(Θ*)` for reflexive `Δ`.
pub fn estr_reflexive(n: &Normalized) -> Result<Rat> {
    if !n.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let delta = n.delta();
    let d = delta.dim();
    let mut total = Rat::zero();
    for k in 1..d.saturating_sub(1) {
        for id in delta.faces().of_dim(k) {
            total += sign(k - 1) * face_volume(delta, id) * normalized_volume(&delta.dual_face(id)?);
        }
    }
    Ok(total)
}

fn require_pseudoreflexive(n: &Normalized) -> Result<()> {
    if n.is_pseudoreflexive() {
        Ok(())
    } else {
        Err(Error::NotPseudoreflexive)
    }
}

/// `Δ^∨` of a pseudoreflexive polytope, again normalized.
pub fn dual_normalized(n: &Normalized) -> Result<Normalized> {
    require_pseudoreflexive(n)?;
    Normalized::assume(mav_dual(n)?)
}

/// `Σ n_Θ v(Θ)` over the singular facets.
pub fn singular_facet_sum(n: &Normalized) -> Result<Rat> {
    let delta = n.delta();
    Ok(singular_facets(n)?
        .iter()
        .fold(Rat::zero(), |acc, (id, dist)| acc + Rat::from_integer(dist.clone()) * face_volume(delta, *id)))
}

/// `Σ_{regular Θ, 1 <= dim Θ <= d-2} (-1)^(dim Θ - 1) v(Θ) v(Θ^∨)`.
pub fn regular_face_sum(n: &Normalized) -> Result<Rat> {
    let delta = n.delta();
    let d = delta.dim();
    let mut total = Rat::zero();
    for k in 1..d.saturating_sub(1) {
        for id in delta.faces().of_dim(k) {
            if face_class(n, id)?.kind == FaceKind::Regular {
                total += sign(k - 1) * face_volume(delta, id) * normalized_volume(&face_dual(n, id)?);
            }
        }
    }
    Ok(total)
}

/// `e_str` from regular faces and singular facets of `Δ` and `Δ^∨`.
pub fn estr_cond(n: &Normalized) -> Result<Rat> {
    let dual = dual_normalized(n)?;
    let d = n.dim();
    Ok(singular_facet_sum(&dual)? + regular_face_sum(n)? + sign(d - 1) * singular_facet_sum(n)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReport {
    pub e_str: Rat,
    pub e_str_dual: Rat,
    /// `(-1)^(d-1)`.
    pub sign: i32,
    pub pass: bool,
}

impl MirrorReport {
    pub fn new(e_str: Rat, e_str_dual: Rat, d: usize) -> MirrorReport {
        let s = sign(d - 1);
        let pass = e_str == &s * &e_str_dual;
        MirrorReport { e_str, e_str_dual, sign: if s.is_one() { 1 } else { -1 }, pass }
    }
}

/// Compares `e_str(Δ)` with `(-1)^(d-1) e_str(Δ^∨)`.
pub fn mirror_test(n: &Normalized) -> Result<MirrorReport> {
    let dual = dual_normalized(n)?;
    Ok(MirrorReport::new(estr_general(n)?, estr_general(&dual)?, n.dim()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFacet {
    pub face: FaceId,
    pub distance: Int,
    pub volume: Rat,
    /// `n_Θ v(Θ)`.
    pub weight: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRegularReport {
    pub singular: Vec<SingularFacet>,
    /// What the singular facets of `Δ` contribute to `e_str(Δ^∨)`.
    pub residual: Rat,
    /// `residual = Σ n_Θ v(Θ)`.
    pub aggregate_ok: bool,
    /// Local stringy Euler number, only with a single singular facet.
    pub local: Option<Rat>,
    pub quasi_regular: Option<bool>,
}

pub fn quasi_regular_report(n: &Normalized) -> Result<QuasiRegularReport> {
    let dual = dual_normalized(n)?;
    let delta = n.delta();
    let singular: Vec<SingularFacet> = singular_facets(n)?
        .into_iter()
        .map(|(face, distance)| {
            let volume = face_volume(delta, face);
            let weight = Rat::from_integer(distance.clone()) * &volume;
            SingularFacet { face, distance, volume, weight }
        })
        .collect();
    let d = n.dim();
    let residual = estr_general(&dual)? - regular_face_sum(&dual)? - sign(d - 1) * singular_facet_sum(&dual)?;
    let total = singular.iter().fold(Rat::zero(), |acc, s| acc + &s.weight);
    let (local, quasi_regular) = match singular.as_slice() {
        [only] => (Some(residual.clone()), Some(residual == only.weight)),
        _ => (None, None),
    };
    Ok(QuasiRegularReport { aggregate_ok: residual == total, singular, residual, local, quasi_regular })
}

/// `v(Δ) = Σ_facets n_Θ v(Θ)`.
pub fn pyramid_identity(n: &Normalized) -> bool {
    let delta = n.delta();
    let total = (0..delta.facets().len()).fold(Rat::zero(), |acc, j| {
        acc + Rat::from_integer(n.facet_distance(j)) * face_volume(delta, delta.facet_face(j))
    });
    total == normalized_volume(delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, RationalVector};
    use crate::polytope::hull;

    fn norm(v: &[&[i64]]) -> Normalized {
        Normalized::new(hull(&v.iter().map(|p| RationalVector::from_ints(p)).collect::<Vec<_>>()).unwrap()).unwrap()
    }

    #[test]
    fn elliptic_curve() {
        let n = norm(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(estr_general(&n).unwrap(), rat(0, 1));
        assert_eq!(estr_reflexive(&n).unwrap(), rat(0, 1));
        assert_eq!(efun_u(&n).unwrap().eval(&rat(1, 1)).unwrap(), rat(0, 1));
        assert!(pyramid_identity(&n));
    }

    #[test]
    fn k3_simplex() {
        let n = norm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
        assert_eq!(estr_reflexive(&n).unwrap(), rat(24, 1));
        assert_eq!(estr_general(&n).unwrap(), rat(24, 1));
        assert_eq!(estr_cond(&n).unwrap(), rat(24, 1));
        let r = stringy_report(&n).unwrap();
        assert!(r.symmetry_ok);
        assert_eq!(r.efun.eval(&rat(1, 1)).unwrap(), rat(24, 1));
        assert!(mirror_test(&n).unwrap().pass);
        let q = quasi_regular_report(&n).unwrap();
        assert!(q.singular.is_empty() && q.aggregate_ok);
    }

    #[test]
    fn non_reflexive_rejected() {
        let n = norm(&[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1], &[-1, -1, -1, -1, -2]]);
        assert_eq!(estr_reflexive(&n), Err(Error::NotReflexive));
    }
}
