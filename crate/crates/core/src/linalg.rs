//! Exact integer and rational linear algebra.
//!
//! Hermite normal forms here are row-style and upper echelon: pivots are
//! positive, every entry below a pivot is zero and every entry above a pivot
//! lies in `[0, pivot)`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVec = Vec<Int>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn ints(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// A point of `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rat>);

impl RationalVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        RationalVector(coords)
    }

    pub fn zeros(d: usize) -> Self {
        RationalVector(vec![Rat::zero(); d])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    pub fn from_integers(v: &[Int]) -> Self {
        RationalVector(v.iter().map(rat_int).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer coordinates, if every coordinate is an integer.
    pub fn to_integers(&self) -> Option<IntVec> {
        if self.is_integral() {
            Some(self.0.iter().map(|x| x.to_integer()).collect())
        } else {
            None
        }
    }

    fn check(&self, other: &RationalVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RationalVector) -> Result<RationalVector> {
        self.check(other)?;
        Ok(RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &RationalVector) -> Result<RationalVector> {
        self.check(other)?;
        Ok(RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn checked_dot(&self, other: &RationalVector) -> Result<Rat> {
        self.check(other)?;
        Ok(dot_rr(&self.0, &other.0))
    }

    pub fn scale(&self, s: &Rat) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * s).collect())
    }

    /// Pairing with an integer vector. Panics on a dimension mismatch.
    pub fn pair(&self, n: &[Int]) -> Rat {
        dot_ri(&self.0, n)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn dot_rr(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_ri(a: &[Rat], b: &[Int]) -> Rat {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !y.is_zero() {
            acc += x * rat_int(y);
        }
    }
    acc
}

pub fn dot_ii(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_rats(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_int).collect()
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Result<IntVec> {
    let g = v.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Positive multiple of a nonzero rational vector that is a primitive integer vector.
pub fn primitive_of_rational(v: &[Rat]) -> Result<IntVec> {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVec = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    primitive(&scaled)
}

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: &[IntVec]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<IntVec> = rows.iter().map(|r| ints(r)).collect();
        Self::from_rows(&v).expect("ragged rows")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *out.get_mut(i, j) += prod;
                }
            }
        }
        Ok(out)
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Int> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let rows: Vec<Vec<Rat>> = self.to_rows().iter().map(|r| to_rats(r)).collect();
        Ok(det_rat(&rows).to_integer())
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self.to_rows().iter().map(|r| to_rats(r)).collect();
        rank(&rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[a] -= q * row[b]
    fn sub_row_multiple(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * self.get(b, j);
            *self.get_mut(a, j) -= t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self.get(a, j).clone();
            *self.get_mut(a, j) = t;
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row-style Hermite normal form `H = U·A` with `U` unimodular.
pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let m = a.nrows();
    let n = a.ncols();
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c among rows r..m
            let mut best: Option<usize> = None;
            for i in r..m {
                let x = h.get(i, c);
                if !x.is_zero() && best.is_none_or(|b| x.abs() < h.get(b, c).abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in (r + 1)..m {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Reduced row echelon form over Q; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : rows·x = 0}`, one vector per free column (that coordinate equals 1).
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(rows);
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[i][f].clone();
        }
        out.push(v);
    }
    out
}

pub fn det_rat(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn inverse(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let aug: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            v
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coordinates of vectors in a fixed basis of a subspace.
#[derive(Clone, Debug)]
pub struct Coordinates {
    cols: Vec<usize>,
    inv: Vec<Vec<Rat>>,
}

impl Coordinates {
    /// `basis` must be linearly independent.
    pub fn new(basis: &[Vec<Rat>]) -> Result<Self> {
        if basis.is_empty() {
            return Ok(Coordinates { cols: vec![], inv: vec![] });
        }
        // pivot columns of the basis rows give an invertible square minor
        let (_, cols) = rref(basis);
        if cols.len() < basis.len() {
            return Err(Error::DependentGenerators);
        }
        let minor: Vec<Vec<Rat>> = basis.iter().map(|b| cols.iter().map(|&c| b[c].clone()).collect()).collect();
        let inv = inverse(&minor).ok_or(Error::DependentGenerators)?;
        Ok(Coordinates { cols, inv })
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// Coordinates `x` with `Σ x_i basis_i = v`; `v` must lie in the span.
    pub fn of(&self, v: &[Rat]) -> Vec<Rat> {
        let k = self.cols.len();
        let w: Vec<Rat> = self.cols.iter().map(|&c| v[c].clone()).collect();
        (0..k).map(|j| (0..k).fold(Rat::zero(), |acc, i| acc + &w[i] * &self.inv[i][j])).collect()
    }
}

pub fn transpose_rat(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Integer vectors `x` with `rows·x = 0`, as a lattice basis of that kernel.
pub fn integer_kernel(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    if rows.is_empty() {
        return (0..ncols).map(|i| (0..ncols).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect();
    }
    let e = IntegerMatrix::from_rows(rows).expect("ragged rows");
    let (h, u) = hermite_normal_form(&e.transpose());
    (0..h.nrows()).filter(|&i| h.row(i).iter().all(|x| x.is_zero())).map(|i| u.row(i).to_vec()).collect()
}

/// Basis of the lattice `Z^d ∩ span_Q(points)`.
pub fn lattice_basis_of_span(points: &[IntVec]) -> Vec<IntVec> {
    let Some(d) = points.first().map(|p| p.len()) else { return vec![] };
    let rat_rows: Vec<Vec<Rat>> = points.iter().map(|p| to_rats(p)).collect();
    let orth: Vec<IntVec> = nullspace(&rat_rows, d)
        .iter()
        .map(|v| primitive_of_rational(v).expect("nullspace vectors are nonzero"))
        .collect();
    let basis = integer_kernel(&orth, d);
    if basis.is_empty() {
        return basis;
    }
    let (h, _) = hermite_normal_form(&IntegerMatrix::from_rows(&basis).expect("ragged rows"));
    (0..h.nrows()).map(|i| h.row(i).to_vec()).filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Lattice basis of `Z^d ∩ span_Q(vectors)` for rational vectors.
pub fn lattice_basis_of_rational_span(vectors: &[Vec<Rat>], d: usize) -> Vec<IntVec> {
    let ints: Vec<IntVec> = vectors
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(|v| primitive_of_rational(v).expect("nonzero"))
        .collect();
    if ints.is_empty() {
        return vec![];
    }
    debug_assert!(ints.iter().all(|v| v.len() == d));
    lattice_basis_of_span(&ints)
}
