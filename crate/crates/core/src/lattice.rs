//! Lattice points of polytopes and cones.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{
    hermite_normal_form, inverse, lattice_basis_of_span, rank, rat_int, to_rats, Coordinates, Int, IntVec, IntegerMatrix,
    Rat, RationalVector,
};
use crate::polytope::Polytope;

/// Integer constraint `⟨x, n⟩ >= c` (or `= c` for equations) restricted to a coordinate prefix.
struct Level {
    lower: Vec<(IntVec, Int)>,
    eqs: Vec<(IntVec, Int)>,
}

fn scaled_constraint(normal: &[Int], offset: &Rat) -> (IntVec, Int) {
    let q = offset.denom();
    (normal.iter().map(|x| x * q).collect(), offset.numer().clone())
}

fn levels(p: &Polytope) -> Vec<Level> {
    let d = p.ambient_dim();
    (1..=d)
        .map(|i| {
            let proj = if i == d {
                p.clone()
            } else {
                let pts: Vec<RationalVector> =
                    p.vertices().iter().map(|v| RationalVector::new(v.coords()[..i].to_vec())).collect();
                Polytope::hull(&pts).expect("nonempty")
            };
            Level {
                lower: proj.facets().iter().map(|h| scaled_constraint(&h.normal, &h.offset)).collect(),
                eqs: proj.equations().iter().map(|e| scaled_constraint(&e.normal, &e.value)).collect(),
            }
        })
        .collect()
}

fn walk(levels: &[Level], prefix: &mut IntVec, visit: &mut dyn FnMut(&[Int])) {
    let i = prefix.len();
    if i == levels.len() {
        visit(prefix);
        return;
    }
    let lvl = &levels[i];
    let mut lo: Option<Int> = None;
    let mut hi: Option<Int> = None;
    let rest = |n: &[Int], c: &Int| -> Int { c - n[..i].iter().zip(prefix.iter()).fold(Int::zero(), |a, (x, y)| a + x * y) };
    for (n, c) in &lvl.eqs {
        let a = &n[i];
        if a.is_zero() {
            continue;
        }
        let r = rest(n, c);
        if !r.is_multiple_of(a) {
            return;
        }
        let x = r / a;
        lo = Some(lo.map_or(x.clone(), |l: Int| l.max(x.clone())));
        hi = Some(hi.map_or(x.clone(), |h: Int| h.min(x)));
    }
    for (n, c) in &lvl.lower {
        let a = &n[i];
        if a.is_zero() {
            continue;
        }
        let r = rest(n, c);
        if a.is_positive() {
            let x = Integer::div_ceil(&r, a);
            lo = Some(lo.map_or(x.clone(), |l: Int| l.max(x)));
        } else {
            let x = r.div_floor(a);
            hi = Some(hi.map_or(x.clone(), |h: Int| h.min(x)));
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else { panic!("polytope projections are bounded") };
    let mut x = lo;
    while x <= hi {
        prefix.push(x.clone());
        walk(levels, prefix, visit);
        prefix.pop();
        x += 1;
    }
}

/// Calls `visit` on every lattice point of `p` in lexicographic order.
pub fn for_each_point(p: &Polytope, visit: &mut dyn FnMut(&[Int])) {
    if p.ambient_dim() == 0 {
        visit(&[]);
        return;
    }
    let lv = levels(p);
    walk(&lv, &mut Vec::with_capacity(p.ambient_dim()), visit);
}

/// All lattice points of `p`, sorted lexicographically.
pub fn points_in(p: &Polytope) -> Vec<IntVec> {
    let mut out = Vec::new();
    for_each_point(p, &mut |x| out.push(x.to_vec()));
    out
}

/// Number of lattice points in `l·P`.
pub fn count_dilation(p: &Polytope, l: u64) -> u64 {
    if l == 0 {
        return 1;
    }
    let q = p.scaled(&Rat::from_integer(Int::from(l)));
    let mut n = 0u64;
    for_each_point(&q, &mut |_| n += 1);
    n
}

/// Convex hull of the lattice points of `p`, or `None` when there are none.
pub fn lattice_hull(p: &Polytope) -> Option<Polytope> {
    let pts: Vec<RationalVector> = points_in(p).iter().map(|x| RationalVector::from_integers(x)).collect();
    if pts.is_empty() {
        return None;
    }
    Some(Polytope::hull(&pts).expect("nonempty").with_side(p.side()))
}

/// Lattice points of the half-open box `{Σ λ_i v_i : 0 <= λ_i < 1}`,
/// in the lattice of the span of the generators.
pub fn parallelepiped_points(gens: &[IntVec]) -> Result<Vec<IntVec>> {
    let k = gens.len();
    let d = gens.first().ok_or(Error::EmptyInput)?.len();
    let rows: Vec<Vec<Rat>> = gens.iter().map(|g| to_rats(g)).collect();
    if rank(&rows) < k {
        return Err(Error::DependentGenerators);
    }
    let basis = lattice_basis_of_span(gens);
    let coords = Coordinates::new(&basis.iter().map(|b| to_rats(b)).collect::<Vec<_>>())?;
    let v: Vec<IntVec> = rows.iter().map(|r| coords.of(r).iter().map(|x| x.to_integer()).collect()).collect();
    let vinv = inverse(&v.iter().map(|r| to_rats(r)).collect::<Vec<_>>()).expect("independent");
    let (h, _) = hermite_normal_form(&IntegerMatrix::from_rows(&v)?);
    let diag: Vec<Int> = (0..k).map(|j| h.get(j, j).clone()).collect();
    let mut out = Vec::new();
    let mut z: IntVec = vec![Int::zero(); k];
    loop {
        // λ = z·V^{-1}, reduced mod 1
        let lam: Vec<Rat> = (0..k)
            .map(|j| {
                let s = (0..k).fold(Rat::zero(), |a, i| a + rat_int(&z[i]) * &vinv[i][j]);
                &s - s.floor()
            })
            .collect();
        let mut x = vec![Rat::zero(); d];
        for (l, g) in lam.iter().zip(gens) {
            if l.is_zero() {
                continue;
            }
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += l * rat_int(gi);
            }
        }
        out.push(x.iter().map(|t| t.to_integer()).collect());
        // odometer over 0 <= z_j < diag_j
        let mut j = 0;
        while j < k {
            z[j] += 1;
            if z[j] < diag[j] {
                break;
            }
            z[j] = Int::zero();
            j += 1;
        }
        if j == k {
            break;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Minimal generating set of the semigroup `C ∩ Z^d`.
pub fn hilbert_basis(c: &Cone) -> Vec<IntVec> {
    let mut cands: Vec<IntVec> = c.generators().to_vec();
    for simplex in c.triangulate() {
        if simplex.is_empty() {
            continue;
        }
        for p in parallelepiped_points(&simplex).expect("simplicial pieces are independent") {
            if p.iter().any(|x| !x.is_zero()) {
                cands.push(p);
            }
        }
    }
    let form = c.positive_form();
    cands.sort_by_cached_key(|x| (crate::linalg::dot_ii(&form, x), x.clone()));
    cands.dedup();
    // a reducible x splits off a basis element of strictly smaller degree
    let mut basis: Vec<IntVec> = Vec::new();
    for x in cands {
        let reducible = basis.iter().any(|h| {
            let diff: IntVec = x.iter().zip(h).map(|(a, b)| a - b).collect();
            c.contains(&diff)
        });
        if !reducible {
            basis.push(x);
        }
    }
    basis.sort();
    basis
}

/// Whether `x` is a nonnegative integer combination of `basis`; `form` must be
/// positive on every element of `basis`.
pub fn in_semigroup(x: &[Int], basis: &[IntVec], form: &[Int]) -> bool {
    fn rec(x: &IntVec, basis: &[IntVec], form: &[Int], start: usize) -> bool {
        if x.iter().all(|v| v.is_zero()) {
            return true;
        }
        let hx = crate::linalg::dot_ii(form, x);
        if hx.is_negative() {
            return false;
        }
        for (i, b) in basis.iter().enumerate().skip(start) {
            if crate::linalg::dot_ii(form, b) > hx {
                continue;
            }
            let y: IntVec = x.iter().zip(b).map(|(a, c)| a - c).collect();
            if rec(&y, basis, form, i) {
                return true;
            }
        }
        false
    }
    rec(&x.to_vec(), basis, form, 0)
}

/// Least common denominator of the coordinates.
pub fn denominator(x: &RationalVector) -> Int {
    x.coords().iter().fold(Int::one(), |l, c| l.lcm(c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;
    use crate::polytope::hull;

    fn poly(v: &[&[i64]]) -> Polytope {
        hull(&v.iter().map(|p| RationalVector::from_ints(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(points_in(&poly(&[&[0, 0], &[1, 0], &[0, 1]])).len(), 3);
        assert_eq!(points_in(&poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).len(), 5);
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(count_dilation(&sq, 3), 16);
        assert_eq!(count_dilation(&sq, 0), 1);
        let seg = poly(&[&[0, 0], &[2, 0]]);
        assert_eq!(count_dilation(&seg, 2), 5);
    }

    #[test]
    fn lower_dimensional_enumeration() {
        let tri = poly(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(points_in(&tri).len(), 6);
        let seg = poly(&[&[0, 0], &[3, 6]]);
        assert_eq!(points_in(&seg), vec![ints(&[0, 0]), ints(&[1, 2]), ints(&[2, 4]), ints(&[3, 6])]);
    }

    #[test]
    fn lattice_hull_cases() {
        let half = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).scaled(&Rat::new(Int::from(1), Int::from(2)));
        let h = lattice_hull(&half).unwrap();
        assert_eq!(h.dim(), 0);
        let sq = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert_eq!(lattice_hull(&sq).unwrap(), sq);
        let tiny = poly(&[&[1, 1]]).scaled(&Rat::new(Int::from(1), Int::from(3)));
        assert!(lattice_hull(&tiny).is_none());
    }

    #[test]
    fn parallelepipeds() {
        assert_eq!(parallelepiped_points(&[ints(&[1, 0]), ints(&[0, 1])]).unwrap(), vec![ints(&[0, 0])]);
        assert_eq!(parallelepiped_points(&[ints(&[1, 0]), ints(&[1, 2])]).unwrap(), vec![ints(&[0, 0]), ints(&[1, 1])]);
        assert_eq!(parallelepiped_points(&[ints(&[2, 0]), ints(&[0, 2])]).unwrap().len(), 4);
        assert_eq!(parallelepiped_points(&[ints(&[1, 0]), ints(&[2, 0])]), Err(Error::DependentGenerators));
        // a segment in the plane x = y has a unimodular span lattice
        assert_eq!(parallelepiped_points(&[ints(&[3, 3])]).unwrap().len(), 3);
    }

    #[test]
    fn hilbert_bases() {
        let c = Cone::new(2, &[ints(&[1, 0]), ints(&[0, 1])]).unwrap();
        assert_eq!(hilbert_basis(&c), vec![ints(&[0, 1]), ints(&[1, 0])]);
        let c = Cone::new(2, &[ints(&[1, 0]), ints(&[1, 2])]).unwrap();
        assert_eq!(hilbert_basis(&c), vec![ints(&[1, 0]), ints(&[1, 1]), ints(&[1, 2])]);
        let c = Cone::new(2, &[ints(&[1, 0]), ints(&[1, 5])]).unwrap();
        assert_eq!(hilbert_basis(&c), (0..=5).map(|i| ints(&[1, i])).collect::<Vec<_>>());
    }
}
