#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stringy_core::{hull, Polytope, RationalVector};

pub fn poly(rows: &[&[i64]]) -> Polytope {
    hull(&rows.iter().map(|r| RationalVector::from_ints(r)).collect::<Vec<_>>()).expect("hull")
}

pub fn poly_vec(rows: &[Vec<i64>]) -> Option<Polytope> {
    hull(&rows.iter().map(|r| RationalVector::from_ints(r)).collect::<Vec<_>>()).ok()
}

fn unit(d: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = s;
    v
}

/// `{x >= 0 : lo <= Σx <= 5}` in R^4.
pub fn quintic_slab(lo: i64) -> Polytope {
    let rows: Vec<Vec<i64>> = (0..4).flat_map(|i| [unit(4, i, lo), unit(4, i, 5)]).collect();
    poly_vec(&rows).unwrap()
}

pub fn quint1() -> Polytope {
    quintic_slab(1)
}

pub fn quint2() -> Polytope {
    quintic_slab(2)
}

/// `conv{e_1, ..., e_d, -Σe_i}`.
pub fn small_simplex(d: usize) -> Polytope {
    let mut rows: Vec<Vec<i64>> = (0..d).map(|i| unit(d, i, 1)).collect();
    rows.push(vec![-1; d]);
    poly_vec(&rows).unwrap()
}

/// Newton polytope of the degree `d + 1` Fermat hypersurface in `P^d`, centred at its interior point.
pub fn newton_simplex(d: usize) -> Polytope {
    let mut rows: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            let mut v = vec![-1; d];
            v[i] = d as i64;
            v
        })
        .collect();
    rows.push(vec![-1; d]);
    poly_vec(&rows).unwrap()
}

pub fn k3_simplex() -> Polytope {
    small_simplex(3)
}

pub fn cube(d: usize) -> Polytope {
    let rows: Vec<Vec<i64>> =
        (0..1usize << d).map(|m| (0..d).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect()).collect();
    poly_vec(&rows).unwrap()
}

pub fn cross_polytope(d: usize) -> Polytope {
    let rows: Vec<Vec<i64>> = (0..d).flat_map(|i| [unit(d, i, 1), unit(d, i, -1)]).collect();
    poly_vec(&rows).unwrap()
}

pub fn corti_golyshev() -> Polytope {
    poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-5, -6, -8]])
}

fn int_vertices(p: &Polytope) -> Vec<[i64; 2]> {
    p.lattice_vertices()
        .expect("lattice")
        .iter()
        .map(|v| [i64::try_from(&v[0]).unwrap(), i64::try_from(&v[1]).unwrap()])
        .collect()
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Vertices in counterclockwise order around the origin.
fn ccw(mut vs: Vec<[i64; 2]>) -> Vec<[i64; 2]> {
    let half = |v: &[i64; 2]| if v[1] > 0 || (v[1] == 0 && v[0] > 0) { 0 } else { 1 };
    vs.sort_by(|a, b| half(a).cmp(&half(b)).then(0.cmp(&cross(*a, *b))));
    vs
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// `GL_2(Z)` normal form of a polygon containing the origin in its interior.
pub fn polygon_normal_form(p: &Polytope) -> Vec<[i64; 2]> {
    let vs = ccw(int_vertices(p));
    let n = vs.len();
    let mut best: Option<Vec<[i64; 2]>> = None;
    for start in 0..n {
        for dir in [1, n - 1] {
            let order: Vec<[i64; 2]> = (0..n).map(|k| vs[(start + dir * k) % n]).collect();
            let [a, b] = order[0];
            let (g, s, t) = ext_gcd(a, b);
            if g != 1 {
                continue;
            }
            let u = |v: [i64; 2]| [s * v[0] + t * v[1], -b * v[0] + a * v[1]];
            let w = u(order[1]);
            let flip = if w[1] < 0 { -1 } else { 1 };
            let q = w[1] * flip;
            let k = -w[0].div_euclid(q);
            let image: Vec<[i64; 2]> = order
                .iter()
                .map(|&v| {
                    let x = u(v);
                    [x[0] + k * x[1] * flip, x[1] * flip]
                })
                .collect();
            if best.as_ref().map_or(true, |b| image < *b) {
                best = Some(image);
            }
        }
    }
    best.expect("primitive vertex")
}

fn is_reflexive(p: &Polytope) -> bool {
    let origin = RationalVector::zeros(p.ambient_dim());
    p.is_full_dimensional()
        && p.relative_interior_contains(&origin)
        && p.polar().map(|q| q.is_lattice()).unwrap_or(false)
}

/// All reflexive polygons up to `GL_2(Z)`, found as sub-polygons of the three maximal ones.
pub fn reflexive_polygons() -> Vec<Polytope> {
    let maximal = [
        poly(&[&[-1, -1], &[2, -1], &[-1, 2]]),
        poly(&[&[-1, -1], &[1, -1], &[1, 1], &[-1, 1]]),
        poly(&[&[-1, -1], &[3, -1], &[-1, 1]]),
    ];
    let mut found: Vec<(Vec<[i64; 2]>, Polytope)> = Vec::new();
    for m in &maximal {
        let pts: Vec<Vec<i64>> = stringy_core::lattice::points_in(m)
            .iter()
            .map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<i64>>())
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        for mask in 1u32..(1 << pts.len()) {
            let chosen: Vec<Vec<i64>> =
                (0..pts.len()).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
            if chosen.len() < 3 {
                continue;
            }
            let Some(p) = poly_vec(&chosen) else { continue };
            // only keep the subset made of exactly the vertices
            if p.vertices().len() != chosen.len() || !is_reflexive(&p) {
                continue;
            }
            let nf = polygon_normal_form(&p);
            if !found.iter().any(|(f, _)| *f == nf) {
                found.push((nf, p));
            }
        }
    }
    found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
    found.into_iter().map(|(_, p)| p).collect()
}

pub struct Member {
    pub name: String,
    pub polytope: Polytope,
    pub reflexive: bool,
}

fn member(name: &str, polytope: Polytope, reflexive: bool) -> Member {
    Member { name: name.to_string(), polytope, reflexive }
}

/// Reflexive polygons, reflexive 3- and 4-polytopes, and the two quintic slabs.
pub fn corpus() -> Vec<Member> {
    let mut out: Vec<Member> = reflexive_polygons()
        .into_iter()
        .enumerate()
        .map(|(i, p)| member(&format!("polygon-{i}"), p, true))
        .collect();
    out.push(member("k3-simplex", k3_simplex(), true));
    out.push(member("octahedron", cross_polytope(3), true));
    out.push(member("cube-3", cube(3), true));
    out.push(member("quintic-simplex", newton_simplex(4), true));
    out.push(member("mirror-quintic-simplex", small_simplex(4), true));
    out.push(member("quint1", quint1(), false));
    out.push(member("quint2", quint2(), false));
    out
}

pub fn random_points(rng: &mut ChaCha8Rng, d: usize, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..n).map(|_| (0..d).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

/// A random full-dimensional lattice polytope with vertices in `[lo, hi]^d`.
pub fn random_polytope(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64) -> Polytope {
    loop {
        let n = rng.gen_range(d + 1..=d + 4);
        if let Some(p) = poly_vec(&random_points(rng, d, n, lo, hi)) {
            if p.is_full_dimensional() {
                return p;
            }
        }
    }
}

/// A random full-dimensional sub-polytope of the reflexive polytope `host` containing the origin
/// in its interior.
pub fn random_subpolytope(rng: &mut ChaCha8Rng, host: &Polytope) -> Polytope {
    let pts: Vec<Vec<i64>> = stringy_core::lattice::points_in(host)
        .iter()
        .map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<i64>>())
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    let d = host.ambient_dim();
    let origin = RationalVector::zeros(d);
    loop {
        let n = rng.gen_range(d + 1..=(2 * d + 2).min(pts.len()));
        let mut chosen = Vec::with_capacity(n);
        while chosen.len() < n {
            let p = &pts[rng.gen_range(0..pts.len())];
            if !chosen.contains(p) {
                chosen.push(p.clone());
            }
        }
        if let Some(p) = poly_vec(&chosen) {
            if p.is_full_dimensional() && p.relative_interior_contains(&origin) {
                return p;
            }
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// The grading in `[-3, 3]^d` positive on every generator with the smallest total degree.
pub fn small_grading(c: &stringy_core::cone::Cone) -> Option<Vec<num_bigint::BigInt>> {
    let d = c.ambient_dim();
    let gens: Vec<Vec<i64>> =
        c.generators().iter().map(|g| g.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut m = vec![-3i64; d];
    loop {
        let degs: Vec<i64> = gens.iter().map(|g| g.iter().zip(&m).map(|(a, b)| a * b).sum()).collect();
        if degs.iter().all(|&x| x > 0) {
            let total = degs.iter().sum();
            if best.as_ref().map_or(true, |(t, _)| total < *t) {
                best = Some((total, m.clone()));
            }
        }
        let mut i = 0;
        while i < d && m[i] == 3 {
            m[i] = -3;
            i += 1;
        }
        if i == d {
            break;
        }
        m[i] += 1;
    }
    best.map(|(_, m)| m.into_iter().map(num_bigint::BigInt::from).collect())
}
