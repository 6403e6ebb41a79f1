//! Polytopes in dual description with an eagerly built face lattice.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::linalg::{
    dot_ri, nullspace, primitive, primitive_of_rational, rank, rat_int, rref, to_rats, Int, IntVec, Rat,
    RationalVector,
};

/// Which lattice a polytope lives in: `M` (polytopes of monomials) or its dual `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    M,
    N,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::M => Side::N,
            Side::N => Side::M,
        }
    }
}

/// The inequality `⟨x, normal⟩ >= offset` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: IntVec,
    pub offset: Rat,
}

impl Halfspace {
    pub fn value(&self, x: &RationalVector) -> Rat {
        x.pair(&self.normal) - &self.offset
    }
}

/// The equation `⟨x, normal⟩ = value` cutting out part of the affine span.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub normal: IntVec,
    pub value: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId(pub usize);

/// A nonempty face, stored as the set of polytope vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    vertices: Vec<usize>,
    facets: Vec<usize>,
    dim: usize,
    subfaces: Vec<FaceId>,
    superfaces: Vec<FaceId>,
}

impl Face {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Indices of the polytope facets containing this face.
    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Faces of dimension one less contained in this face.
    pub fn subfaces(&self) -> &[FaceId] {
        &self.subfaces
    }

    /// Faces of dimension one more containing this face.
    pub fn superfaces(&self) -> &[FaceId] {
        &self.superfaces
    }
}

/// All nonempty faces, ordered by dimension and then by vertex set.
/// The polytope itself is the last entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    faces: Vec<Face>,
    index: HashMap<Vec<usize>, FaceId>,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id.0]
    }

    pub fn top(&self) -> FaceId {
        FaceId(self.faces.len() - 1)
    }

    pub fn ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId)
    }

    pub fn of_dim(&self, k: usize) -> impl Iterator<Item = FaceId> + '_ {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == k).map(|(i, _)| FaceId(i))
    }

    /// Face with exactly this (sorted) vertex set.
    pub fn find(&self, vertices: &[usize]) -> Option<FaceId> {
        self.index.get(vertices).copied()
    }

    /// `f_k` for `k = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.last().map_or(0, |f| f.dim);
        let mut f = vec![0; top + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    fn build(nv: usize, facet_sets: &[FixedBitSet], dim: usize) -> FaceLattice {
        let mut full = FixedBitSet::with_capacity(nv);
        full.insert_range(..);
        let mut sets: Vec<FixedBitSet> = vec![full.clone()];
        let mut dims: Vec<usize> = vec![dim];
        let mut subs: Vec<Vec<usize>> = vec![vec![]];
        let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
        seen.insert(full, 0);
        let mut next = 0;
        while next < sets.len() {
            let f = sets[next].clone();
            let fd = dims[next];
            if fd > 0 {
                let mut cands: Vec<FixedBitSet> = Vec::new();
                for g in facet_sets {
                    if f.is_subset(g) {
                        continue;
                    }
                    let mut i = f.clone();
                    i.intersect_with(g);
                    if i.is_clear() || cands.contains(&i) {
                        continue;
                    }
                    cands.push(i);
                }
                let maximal: Vec<FixedBitSet> = cands
                    .iter()
                    .filter(|c| !cands.iter().any(|o| o != *c && c.is_subset(o)))
                    .cloned()
                    .collect();
                for c in maximal {
                    let id = match seen.get(&c) {
                        Some(&id) => id,
                        None => {
                            let id = sets.len();
                            seen.insert(c.clone(), id);
                            sets.push(c);
                            dims.push(fd - 1);
                            subs.push(vec![]);
                            id
                        }
                    };
                    subs[next].push(id);
                }
            }
            next += 1;
        }
        // canonical order
        let mut order: Vec<usize> = (0..sets.len()).collect();
        let verts: Vec<Vec<usize>> = sets.iter().map(|s| s.ones().collect()).collect();
        order.sort_by(|&a, &b| dims[a].cmp(&dims[b]).then_with(|| verts[a].cmp(&verts[b])));
        let mut new_id = vec![0; sets.len()];
        for (pos, &old) in order.iter().enumerate() {
            new_id[old] = pos;
        }
        let mut faces: Vec<Face> = order
            .iter()
            .map(|&old| {
                let mut sub: Vec<FaceId> = subs[old].iter().map(|&s| FaceId(new_id[s])).collect();
                sub.sort();
                let facets = facet_sets
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| sets[old].is_subset(g))
                    .map(|(j, _)| j)
                    .collect();
                Face { vertices: verts[old].clone(), facets, dim: dims[old], subfaces: sub, superfaces: vec![] }
            })
            .collect();
        for i in 0..faces.len() {
            for s in faces[i].subfaces.clone() {
                faces[s.0].superfaces.push(FaceId(i));
            }
        }
        let index = faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), FaceId(i))).collect();
        FaceLattice { faces, index }
    }
}

/// A bounded polytope with vertices, facet inequalities and affine-span equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient: usize,
    dim: usize,
    vertices: Vec<RationalVector>,
    facets: Vec<Halfspace>,
    equations: Vec<Equation>,
    side: Side,
    lattice: FaceLattice,
}

/// Convex hull of a nonempty finite point set.
pub fn hull(points: &[RationalVector]) -> Result<Polytope> {
    Polytope::hull(points)
}

fn check_dims(points: &[RationalVector]) -> Result<usize> {
    let d = points.first().ok_or(Error::EmptyInput)?.dim();
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
    }
    Ok(d)
}

fn homogenize(p: &[Rat]) -> IntVec {
    let l = p.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let mut row = vec![l.clone()];
    row.extend(p.iter().map(|x| (x * rat_int(&l)).to_integer()));
    row
}

impl Polytope {
    pub fn hull(points: &[RationalVector]) -> Result<Polytope> {
        let d = check_dims(points)?;
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let p0 = pts[0].clone();
        let dirs: Vec<Vec<Rat>> = pts[1..].iter().map(|p| (p - &p0).into_coords()).collect();
        let (_, pivots) = rref(&dirs);
        let k = pivots.len();
        let mut equations: Vec<Equation> = nullspace(&dirs, d)
            .iter()
            .map(|v| {
                let normal = primitive_of_rational(v).expect("nonzero");
                let value = p0.pair(&normal);
                Equation { normal, value }
            })
            .collect();
        equations.sort();
        if k == 0 {
            return Ok(Self::assemble(d, 0, vec![p0], vec![], equations, Side::M));
        }
        let rows: Vec<IntVec> = pts
            .iter()
            .map(|p| {
                let proj: Vec<Rat> = pivots.iter().map(|&j| p[j].clone()).collect();
                homogenize(&proj)
            })
            .collect();
        let rays = extreme_rays(&rows, k + 1);
        let mut facets: Vec<Halfspace> = rays
            .iter()
            .map(|r| {
                let mut normal = vec![Int::zero(); d];
                for (i, &j) in pivots.iter().enumerate() {
                    normal[j] = r[i + 1].clone();
                }
                let normal = primitive(&normal).expect("facet normal is nonzero");
                let offset = pts.iter().map(|p| p.pair(&normal)).min().expect("nonempty");
                Halfspace { normal, offset }
            })
            .collect();
        facets.sort();
        facets.dedup();
        let vertices: Vec<RationalVector> = pts
            .iter()
            .filter(|p| {
                let tight: Vec<Vec<Rat>> = facets
                    .iter()
                    .filter(|h| h.value(p).is_zero())
                    .map(|h| pivots.iter().map(|&j| rat_int(&h.normal[j])).collect())
                    .collect();
                rank(&tight) == k
            })
            .cloned()
            .collect();
        Ok(Self::assemble(d, k, vertices, facets, equations, Side::M))
    }

    fn assemble(
        ambient: usize,
        dim: usize,
        vertices: Vec<RationalVector>,
        facets: Vec<Halfspace>,
        equations: Vec<Equation>,
        side: Side,
    ) -> Polytope {
        let nv = vertices.len();
        let facet_sets: Vec<FixedBitSet> = facets
            .iter()
            .map(|h| {
                let mut s = FixedBitSet::with_capacity(nv);
                for (i, v) in vertices.iter().enumerate() {
                    if h.value(v).is_zero() {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        let lattice = FaceLattice::build(nv, &facet_sets, dim);
        debug_assert!(euler_ok(&lattice.f_vector(), dim));
        Polytope { ambient, dim, vertices, facets, equations, side, lattice }
    }

    /// The polytope `{x : ⟨x,n⟩ >= c}` for the given inequalities; `None` when empty.
    pub fn from_inequalities(ambient: usize, ineqs: &[Halfspace]) -> Result<Option<Polytope>> {
        let mut rows: Vec<IntVec> = vec![{
            let mut r = vec![Int::zero(); ambient + 1];
            r[0] = Int::one();
            r
        }];
        for h in ineqs {
            if h.normal.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: h.normal.len() });
            }
            let den = h.offset.denom().clone();
            let mut r = vec![-h.offset.numer().clone()];
            r.extend(h.normal.iter().map(|x| x * &den));
            rows.push(r);
        }
        let rr: Vec<Vec<Rat>> = rows.iter().map(|r| to_rats(r)).collect();
        if rank(&rr) < ambient + 1 {
            return Err(Error::Unbounded);
        }
        let rays = extreme_rays(&rows, ambient + 1);
        let mut pts = Vec::new();
        let mut recession = false;
        for r in &rays {
            if r[0].is_zero() {
                recession = true;
            } else {
                let t = rat_int(&r[0]);
                pts.push(RationalVector::new(r[1..].iter().map(|x| rat_int(x) / &t).collect()));
            }
        }
        if pts.is_empty() {
            return Ok(None);
        }
        if recession {
            return Err(Error::Unbounded);
        }
        Ok(Some(Polytope::hull(&pts)?))
    }

    pub fn with_side(mut self, side: Side) -> Polytope {
        self.side = side;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn faces(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn face(&self, id: FaceId) -> &Face {
        self.lattice.face(id)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.is_integral())
    }

    pub fn lattice_vertices(&self) -> Option<Vec<IntVec>> {
        self.vertices.iter().map(|v| v.to_integers()).collect()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.equations.iter().all(|e| x.pair(&e.normal) == e.value)
            && self.facets.iter().all(|h| !h.value(x).is_negative())
    }

    /// Whether `x` lies in the relative interior.
    pub fn relative_interior_contains(&self, x: &RationalVector) -> bool {
        self.equations.iter().all(|e| x.pair(&e.normal) == e.value)
            && self.facets.iter().all(|h| h.value(x).is_positive())
    }

    /// Face of the facet with index `j`.
    pub fn facet_face(&self, j: usize) -> FaceId {
        let f = self.lattice.of_dim(self.dim.saturating_sub(1)).find(|&id| self.face(id).facets == [j]);
        f.expect("every facet is a face")
    }

    pub fn face_vertices(&self, id: FaceId) -> Vec<RationalVector> {
        self.face(id).vertices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// The face whose vertex set is exactly `verts`, if there is one.
    pub fn find_face(&self, verts: &[RationalVector]) -> Option<FaceId> {
        let mut idx: Vec<usize> =
            verts.iter().map(|v| self.vertices.binary_search(v).ok()).collect::<Option<Vec<_>>>()?;
        idx.sort();
        idx.dedup();
        self.lattice.find(&idx)
    }

    /// The face as a polytope in its own right.
    pub fn face_polytope(&self, id: FaceId) -> Polytope {
        Polytope::hull(&self.face_vertices(id)).expect("faces are nonempty").with_side(self.side)
    }

    pub fn translate(&self, t: &RationalVector) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v + t).collect();
        let facets =
            self.facets.iter().map(|h| Halfspace { normal: h.normal.clone(), offset: &h.offset + t.pair(&h.normal) }).collect();
        let equations =
            self.equations.iter().map(|e| Equation { normal: e.normal.clone(), value: &e.value + t.pair(&e.normal) }).collect();
        Polytope { vertices, facets, equations, ..self.clone() }
    }

    /// Dilation by a positive rational factor.
    pub fn scaled(&self, s: &Rat) -> Polytope {
        assert!(s.is_positive(), "scale factor must be positive");
        let vertices = self.vertices.iter().map(|v| v.scale(s)).collect();
        let facets = self.facets.iter().map(|h| Halfspace { normal: h.normal.clone(), offset: &h.offset * s }).collect();
        let equations = self.equations.iter().map(|e| Equation { normal: e.normal.clone(), value: &e.value * s }).collect();
        Polytope { vertices, facets, equations, ..self.clone() }
    }

    /// `min` of `⟨x, n⟩` over the polytope.
    pub fn ord(&self, n: &[Int]) -> Rat {
        self.vertices.iter().map(|v| v.pair(n)).min().expect("polytopes are nonempty")
    }

    pub fn ord_rational(&self, y: &[Rat]) -> Rat {
        self.vertices.iter().map(|v| crate::linalg::dot_rr(v.coords(), y)).min().expect("polytopes are nonempty")
    }

    fn require_origin_interior(&self) -> Result<()> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional { dim: self.dim, ambient: self.ambient });
        }
        if self.facets.iter().any(|h| !h.offset.is_negative()) {
            return Err(Error::OriginNotInterior);
        }
        Ok(())
    }

    /// The polar `{y : ⟨x,y⟩ >= -1 for x in P}`.
    pub fn polar(&self) -> Result<Polytope> {
        self.require_origin_interior()?;
        let pts: Vec<RationalVector> = self.facets.iter().map(|h| polar_vertex(h)).collect();
        Ok(Polytope::hull(&pts)?.with_side(self.side.flip()))
    }

    /// Normal cone `σ^Θ`, generated by the inner normals of the facets containing `Θ`.
    pub fn normal_cone(&self, id: FaceId) -> Result<Cone> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional { dim: self.dim, ambient: self.ambient });
        }
        let gens: Vec<IntVec> = self.face(id).facets.iter().map(|&j| self.facets[j].normal.clone()).collect();
        Cone::new(self.ambient, &gens)
    }

    /// Dual face `Θ* = {y in P* : ⟨x,y⟩ = -1 on Θ}`.
    pub fn dual_face(&self, id: FaceId) -> Result<Polytope> {
        self.require_origin_interior()?;
        let face = self.face(id);
        if face.facets.is_empty() {
            return Err(Error::ImproperFace);
        }
        let pts: Vec<RationalVector> = face.facets.iter().map(|&j| polar_vertex(&self.facets[j])).collect();
        Ok(Polytope::hull(&pts)?.with_side(self.side.flip()))
    }

    /// Pulling triangulation; each simplex is a list of vertex indices.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        let mut memo: HashMap<FaceId, Vec<Vec<usize>>> = HashMap::new();
        self.pull(self.lattice.top(), &mut memo)
    }

    fn pull(&self, id: FaceId, memo: &mut HashMap<FaceId, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(&id) {
            return t.clone();
        }
        let face = self.face(id);
        let out = if face.dim == 0 {
            vec![face.vertices.clone()]
        } else {
            let apex = face.vertices[0];
            let mut out = Vec::new();
            for &s in &face.subfaces {
                if self.face(s).vertices.contains(&apex) {
                    continue;
                }
                for mut simplex in self.pull(s, memo) {
                    simplex.insert(0, apex);
                    out.push(simplex);
                }
            }
            out
        };
        memo.insert(id, out.clone());
        out
    }
}

fn polar_vertex(h: &Halfspace) -> RationalVector {
    let s = -h.offset.recip();
    RationalVector::new(h.normal.iter().map(|x| rat_int(x) * &s).collect())
}

fn euler_ok(f: &[usize], dim: usize) -> bool {
    if dim == 0 {
        return f == [1];
    }
    let sum: i64 = f[..dim].iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
    let expected = if (dim - 1) % 2 == 0 { 2 } else { 0 };
    sum == expected
}

/// Euler relation `Σ_{k<dim} (-1)^k f_k = 1 + (-1)^(dim-1)` on the boundary complex.
pub fn euler_relation_holds(p: &Polytope) -> bool {
    euler_ok(&p.faces().f_vector(), p.dim())
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "polytope of dimension {} in Q^{} with {} vertices", self.dim, self.ambient, self.vertices.len())?;
        for v in &self.vertices {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Pairing of a rational point with an integer normal.
pub fn pair(x: &RationalVector, n: &[Int]) -> Rat {
    dot_ri(x.coords(), n)
}
