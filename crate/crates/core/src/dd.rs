//! Double description method over the integers.
//!
//! Computes the extreme rays of a pointed cone `{y : A y >= 0}` where `A` has
//! full column rank.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::linalg::{dot_ii, inverse, primitive, primitive_of_rational, rank, to_rats, Int, IntVec, Rat};

struct Ray {
    v: IntVec,
    zeros: FixedBitSet,
}

/// Extreme rays of `{y : rows·y >= 0}` as primitive integer vectors.
///
/// `rows` must have rank `ncols`.
pub(crate) fn extreme_rays(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let m = rows.len();
    let rat_rows: Vec<Vec<Rat>> = rows.iter().map(|r| to_rats(r)).collect();

    // greedy basis of rows
    let mut basis: Vec<usize> = Vec::with_capacity(ncols);
    let mut chosen: Vec<Vec<Rat>> = Vec::with_capacity(ncols);
    for (i, r) in rat_rows.iter().enumerate() {
        if basis.len() == ncols {
            break;
        }
        chosen.push(r.clone());
        if rank(&chosen) == chosen.len() {
            basis.push(i);
        } else {
            chosen.pop();
        }
    }
    assert_eq!(basis.len(), ncols, "constraint matrix must have full column rank");

    let inv = inverse(&chosen).expect("basis rows are independent");
    let mut rays: Vec<Ray> = (0..ncols)
        .map(|j| {
            let col: Vec<Rat> = inv.iter().map(|row| row[j].clone()).collect();
            let v = primitive_of_rational(&col).expect("inverse has no zero column");
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &b) in basis.iter().enumerate() {
                if k != j {
                    zeros.insert(b);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    let mut in_basis = FixedBitSet::with_capacity(m);
    for &b in &basis {
        in_basis.insert(b);
    }

    for (i, a) in rows.iter().enumerate() {
        if in_basis.contains(i) {
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot_ii(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) + 2 < ncols {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| t == p || t == n || !common.is_subset(&rays[t].zeros));
                if !adjacent {
                    continue;
                }
                let v: IntVec = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| &vals[p] * xn - &vals[n] * xp)
                    .collect();
                let v = primitive(&v).expect("adjacent rays are independent");
                common.insert(i);
                fresh.push(Ray { v, zeros: common });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|v| v.iter().any(|x| !x.is_zero())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;

    #[test]
    fn square_facets() {
        // homogenized vertices of [-1,1]^2
        let rows: Vec<IntVec> = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]].iter().map(|r| ints(r)).collect();
        let rays = extreme_rays(&rows, 3);
        assert_eq!(rays.len(), 4);
        assert!(rays.contains(&ints(&[1, 1, 0])));
        assert!(rays.contains(&ints(&[1, 0, -1])));
    }

    #[test]
    fn infeasible_yields_nothing() {
        let rows: Vec<IntVec> = [[1], [-1]].iter().map(|r| ints(r)).collect();
        assert!(extreme_rays(&rows, 1).is_empty());
    }

    #[test]
    fn cube_vertices_from_inequalities() {
        // t >= 0, t ± x_i >= 0
        let mut rows = vec![ints(&[1, 0, 0, 0])];
        for i in 0..3 {
            for s in [1, -1] {
                let mut r = ints(&[1, 0, 0, 0]);
                r[i + 1] = Int::from(s);
                rows.push(r);
            }
        }
        let rays = extreme_rays(&rows, 4);
        assert_eq!(rays.len(), 8);
        assert!(rays.iter().all(|r| r[0] == Int::from(1)));
    }
}
