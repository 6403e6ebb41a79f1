//! Pointed rational polyhedral cones with apex 0.

use num_traits::{Signed, Zero};

use crate::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::linalg::{dot_ii, dot_ri, nullspace, primitive, primitive_of_rational, rank, rat_int, rref, to_rats, Int, IntVec, Rat, RationalVector};
use crate::polytope::Polytope;

/// A pointed cone given by its primitive extreme rays and facet normals.
///
/// Facet normals `n` mean `⟨x, n⟩ >= 0`; `equations` cut out the linear span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    dim: usize,
    generators: Vec<IntVec>,
    facet_normals: Vec<IntVec>,
    equations: Vec<IntVec>,
}

impl Cone {
    pub fn zero(ambient: usize) -> Cone {
        let equations = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Int::from(1) } else { Int::zero() }).collect())
            .collect();
        Cone { ambient, dim: 0, generators: vec![], facet_normals: vec![], equations }
    }

    /// Cone generated by the given integer vectors; rejects cones containing a line.
    pub fn new(ambient: usize, gens: &[IntVec]) -> Result<Cone> {
        for g in gens {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: g.len() });
            }
        }
        let gens: Vec<IntVec> =
            gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).map(|g| primitive(g).expect("nonzero")).collect();
        if gens.is_empty() {
            return Ok(Cone::zero(ambient));
        }
        let rows: Vec<Vec<Rat>> = gens.iter().map(|g| to_rats(g)).collect();
        let (_, pivots) = rref(&rows);
        let k = pivots.len();
        let mut equations: Vec<IntVec> =
            nullspace(&rows, ambient).iter().map(|v| primitive_of_rational(v).expect("nonzero")).collect();
        equations.sort();
        let proj: Vec<IntVec> = gens.iter().map(|g| pivots.iter().map(|&j| g[j].clone()).collect()).collect();
        let rays = extreme_rays(&proj, k);
        let proj_rank = rank(&rays.iter().map(|r| to_rats(r)).collect::<Vec<_>>());
        if proj_rank < k {
            return Err(Error::Lineality);
        }
        let mut facet_normals: Vec<IntVec> = rays
            .iter()
            .map(|r| {
                let mut n = vec![Int::zero(); ambient];
                for (i, &j) in pivots.iter().enumerate() {
                    n[j] = r[i].clone();
                }
                n
            })
            .collect();
        facet_normals.sort();
        let mut generators: Vec<IntVec> = gens
            .iter()
            .zip(&proj)
            .filter(|(_, pg)| {
                let tight: Vec<Vec<Rat>> = rays.iter().filter(|r| dot_ii(r, pg).is_zero()).map(|r| to_rats(r)).collect();
                rank(&tight) + 1 == k
            })
            .map(|(g, _)| g.clone())
            .collect();
        generators.sort();
        generators.dedup();
        Ok(Cone { ambient, dim: k, generators, facet_normals, equations })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facet_normals
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    pub fn is_simplicial(&self) -> bool {
        self.generators.len() == self.dim
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| dot_ii(e, x).is_zero()) && self.facet_normals.iter().all(|n| !dot_ii(n, x).is_negative())
    }

    pub fn contains_rational(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_ri(x, e).is_zero())
            && self.facet_normals.iter().all(|n| !dot_ri(x, n).is_negative())
    }

    pub fn relative_interior_contains(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_ri(x, e).is_zero())
            && self.facet_normals.iter().all(|n| dot_ri(x, n).is_positive())
    }

    /// A linear form positive on every nonzero point of the cone.
    pub fn positive_form(&self) -> IntVec {
        let mut l = vec![Int::zero(); self.ambient];
        for n in &self.facet_normals {
            for (a, b) in l.iter_mut().zip(n) {
                *a += b;
            }
        }
        l
    }

    /// Triangulation into simplicial cones using only the extreme rays.
    pub fn triangulate(&self) -> Vec<Vec<IntVec>> {
        match self.dim {
            0 => vec![vec![]],
            1 => vec![self.generators.clone()],
            _ => {
                let l = self.positive_form();
                let section: Vec<RationalVector> = self
                    .generators
                    .iter()
                    .map(|g| {
                        let h = rat_int(&dot_ii(&l, g));
                        RationalVector::new(g.iter().map(|x| rat_int(x) / &h).collect())
                    })
                    .collect();
                let p = Polytope::hull(&section).expect("nonempty");
                debug_assert_eq!(p.vertices().len(), section.len());
                let owner: Vec<usize> =
                    p.vertices().iter().map(|v| section.iter().position(|s| s == v).expect("section vertex")).collect();
                p.triangulation()
                    .into_iter()
                    .map(|s| s.into_iter().map(|i| self.generators[owner[i]].clone()).collect())
                    .collect()
            }
        }
    }

    /// The polytope `{y in C : ⟨m, y⟩ <= 1}` when it is bounded.
    pub fn truncation(&self, m: &[Int]) -> Result<Polytope> {
        let mut pts = vec![RationalVector::zeros(self.ambient)];
        for g in &self.generators {
            let h = dot_ii(m, g);
            if !h.is_positive() {
                return Err(Error::NonPositiveGrading);
            }
            let h = rat_int(&h);
            pts.push(RationalVector::new(g.iter().map(|x| rat_int(x) / &h).collect()));
        }
        Polytope::hull(&pts)
    }
}
