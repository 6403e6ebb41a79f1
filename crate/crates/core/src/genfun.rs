//! Rational functions over Q and lattice-point generating functions of cones.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::parallelepiped_points;
use crate::linalg::{dot_ii, to_rats, Coordinates, Int, IntVec, Rat};
use crate::poly::UPolynomial;

/// `num/den` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UPolynomial,
    den: UPolynomial,
}

impl RationalFunction {
    pub fn new(num: UPolynomial, den: UPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let s = den.leading().recip();
        Ok(RationalFunction { num: num.scale(&s), den: den.scale(&s) })
    }

    pub fn zero() -> Self {
        RationalFunction { num: UPolynomial::zero(), den: UPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(UPolynomial::one())
    }

    pub fn from_poly(p: UPolynomial) -> Self {
        RationalFunction { num: p, den: UPolynomial::one() }
    }

    /// `t^e` for any integer `e`.
    pub fn monomial(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(UPolynomial::monomial(Rat::one(), e as usize))
        } else {
            RationalFunction { num: UPolynomial::one(), den: UPolynomial::monomial(Rat::one(), (-e) as usize) }
        }
    }

    pub fn numerator(&self) -> &UPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &UPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Power series coefficients of degrees `0..=order`.
    pub fn series_expand(&self, order: usize) -> Result<Vec<Rat>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::SeriesUndefined);
        }
        let inv = d0.recip();
        let mut out: Vec<Rat> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut c = self.num.coeff(k);
            for j in 1..=k {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    c -= dj * &out[k - j];
                }
            }
            out.push(c * &inv);
        }
        Ok(out)
    }

    /// `f(1/t)`.
    pub fn reciprocal(&self) -> Self {
        let n = self.num.degree().unwrap_or(0);
        let m = self.den.degree().unwrap_or(0);
        Self::new(self.num.reversed(n).shift(m), self.den.reversed(m).shift(n)).expect("nonzero denominator")
    }

    pub fn mul_monomial(&self, e: i64) -> Self {
        self * &Self::monomial(e)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.num.scale(s), self.den.clone()).expect("nonzero denominator")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RationalFunction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num.scale(&self.den.leading().recip()))
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

fn small(x: &Int) -> i64 {
    i64::try_from(x).expect("exponent fits in i64")
}

/// Integer Laurent polynomial `Σ c_e t^e`.
#[derive(Clone, Default)]
struct Laurent(BTreeMap<i64, Int>);

impl Laurent {
    fn add(&mut self, e: i64, c: Int) {
        let slot = self.0.entry(e).or_insert_with(Int::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    /// Multiplies by `1 - t^k`.
    fn times_one_minus(&self, k: i64) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &self.0 {
            out.add(e + k, -c);
        }
        out
    }

    /// Multiplies by `-t^k`.
    fn times_neg_monomial(&self, k: i64) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (e + k, -c)).collect())
    }

    fn merge(&mut self, other: &Laurent) {
        for (e, c) in &other.0 {
            self.add(*e, c.clone());
        }
    }
}

/// A point of the relative interior of `c` that avoids every wall of the triangulation.
fn generic_interior_point(c: &Cone, pieces: &[(Vec<IntVec>, Coordinates)]) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let gens = c.generators();
    loop {
        let w: Vec<i64> = gens.iter().map(|_| rng.gen_range(1..=1000)).collect();
        let mut q = vec![Rat::zero(); c.ambient_dim()];
        for (g, wi) in gens.iter().zip(&w) {
            for (qi, gi) in q.iter_mut().zip(g) {
                *qi += Rat::from_integer(gi * Int::from(*wi));
            }
        }
        if pieces.iter().all(|(_, co)| co.of(&q).iter().all(|x| !x.is_zero())) {
            return q;
        }
    }
}

/// Generating function allowing any grading that vanishes on no generator.
pub(crate) fn r_cone_any(c: &Cone, m: &[Int], closed: bool) -> Result<RationalFunction> {
    if m.len() != c.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: c.ambient_dim(), found: m.len() });
    }
    if c.dim() == 0 {
        return Ok(RationalFunction::one());
    }
    if c.generators().iter().any(|g| dot_ii(m, g).is_zero()) {
        return Err(Error::NonPositiveGrading);
    }
    let pieces: Vec<(Vec<IntVec>, Coordinates)> = c
        .triangulate()
        .into_iter()
        .map(|s| {
            let co = Coordinates::new(&s.iter().map(|g| to_rats(g)).collect::<Vec<_>>()).expect("simplicial");
            (s, co)
        })
        .collect();
    let q = generic_interior_point(c, &pieces);
    // each piece is num / Π(1 - t^k); everything is brought over the common denominator
    // Π_k (1 - t^k)^mult[k] and summed as integer Laurent polynomials
    let mut parts: Vec<(Laurent, BTreeMap<i64, usize>)> = Vec::with_capacity(pieces.len());
    let mut mult: BTreeMap<i64, usize> = BTreeMap::new();
    for (gens, co) in &pieces {
        let lam = co.of(&q);
        let open: Vec<bool> = lam.iter().map(|l| if closed { l.is_negative() } else { l.is_positive() }).collect();
        let mut num = Laurent::default();
        for p in parallelepiped_points(gens)? {
            let mu = co.of(&to_rats(&p));
            let mut e = dot_ii(m, &p);
            for (i, g) in gens.iter().enumerate() {
                if open[i] && mu[i].is_zero() {
                    e += dot_ii(m, g);
                }
            }
            num.add(small(&e), Int::one());
        }
        let mut den: BTreeMap<i64, usize> = BTreeMap::new();
        for g in gens {
            let h = small(&dot_ii(m, g));
            // 1/(1 - t^h) = -t^|h| / (1 - t^|h|) when h < 0
            if h < 0 {
                num = num.times_neg_monomial(-h);
            }
            *den.entry(h.abs()).or_insert(0) += 1;
        }
        for (k, n) in &den {
            let slot = mult.entry(*k).or_insert(0);
            *slot = (*slot).max(*n);
        }
        parts.push((num, den));
    }
    let mut total = Laurent::default();
    for (mut num, den) in parts {
        for (k, n) in &mult {
            for _ in den.get(k).copied().unwrap_or(0)..*n {
                num = num.times_one_minus(*k);
            }
        }
        total.merge(&num);
    }
    let Some(&low) = total.0.keys().next() else { return Ok(RationalFunction::zero()) };
    let shift = low.min(0);
    let top = total.0.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![Rat::zero(); (top - shift) as usize + 1];
    for (e, c) in total.0 {
        coeffs[(e - shift) as usize] = Rat::from_integer(c);
    }
    // 1 - t^k = -Π_{j | k} Φ_j, so the denominator is ± t^s Π Φ_j^e_j; cancelling each Φ_j
    // as often as it divides leaves the fraction in lowest terms
    let mut num = UPolynomial::new(coeffs);
    if mult.values().sum::<usize>() % 2 == 1 {
        num = -&num;
    }
    let mut exps: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, n) in &mult {
        let k = *k as usize;
        for j in (1..=k).filter(|j| k % j == 0) {
            *exps.entry(j).or_insert(0) += n;
        }
    }
    let mut cyclo = BTreeMap::new();
    let mut den = UPolynomial::monomial(Rat::one(), (-shift) as usize);
    for (j, e) in exps {
        let phi = cyclotomic(j, &mut cyclo);
        let mut left = e;
        while left > 0 {
            let (quo, rem) = num.div_rem(&phi);
            if !rem.is_zero() {
                break;
            }
            num = quo;
            left -= 1;
        }
        den = &den * &phi.pow(left);
    }
    Ok(RationalFunction { num, den })
}

/// The cyclotomic polynomial `Φ_n`, memoized.
fn cyclotomic(n: usize, memo: &mut BTreeMap<usize, UPolynomial>) -> UPolynomial {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = &UPolynomial::monomial(Rat::one(), n) - &UPolynomial::one();
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.div_rem(&cyclotomic(d, memo)).0;
    }
    memo.insert(n, p.clone());
    p
}

/// `Σ_{n ∈ C ∩ Z^d} t^⟨m,n⟩` (closed) or the same sum over the relative interior.
pub fn r_cone(c: &Cone, m: &[Int], closed: bool) -> Result<RationalFunction> {
    if m.len() != c.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: c.ambient_dim(), found: m.len() });
    }
    if c.generators().iter().any(|g| !dot_ii(m, g).is_positive()) {
        return Err(Error::NonPositiveGrading);
    }
    r_cone_any(c, m, closed)
}

/// Checks `R(C, m, t) = (-1)^dim R(C°, -m, t)` exactly.
pub fn reciprocity_check(c: &Cone, m: &[Int]) -> Result<bool> {
    let lhs = r_cone(c, m, true)?;
    let neg: IntVec = m.iter().map(|x| -x).collect();
    let rhs = r_cone_any(c, &neg, false)?;
    let rhs = if c.dim() % 2 == 0 { rhs } else { -&rhs };
    Ok(lhs == rhs)
}

/// `lim_{t→1} (1-t)^dim R(C, m, t)`.
pub fn vanishing_limit(c: &Cone, m: &[Int]) -> Result<Rat> {
    let r = r_cone(c, m, true)?;
    let factor = RationalFunction::from_poly(UPolynomial::from_ints(&[1, -1]).pow(c.dim()));
    (&r * &factor).eval(&Rat::one())
}
