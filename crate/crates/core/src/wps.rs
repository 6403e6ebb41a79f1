//! Calabi-Yau hypersurfaces in the weighted projective spaces `P(a, 1^d)`, `d = ab + l`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Int, Rat, RationalVector};
use crate::measures::binomial;
use crate::polytope::{hull, Polytope, Side};
use crate::stringy::{Integrality, MirrorReport};

/// Default for `STRINGY_MAX_DIM`.
pub const DEFAULT_MAX_DIM: usize = 8;

/// Materialization guard, read from `STRINGY_MAX_DIM`.
pub fn max_dim() -> usize {
    std::env::var("STRINGY_MAX_DIM").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WpsParams {
    a: u64,
    b: u64,
    l: u64,
}

impl WpsParams {
    pub fn new(a: u64, b: u64, l: u64) -> Result<WpsParams> {
        if a < 2 {
            return Err(Error::InvalidParams(format!("a = {a} must be at least 2")));
        }
        if b < 2 {
            return Err(Error::InvalidParams(format!("b = {b} must be at least 2")));
        }
        if l < 1 || l >= a {
            return Err(Error::InvalidParams(format!("l = {l} must lie in 1..={}", a - 1)));
        }
        Ok(WpsParams { a, b, l })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn d(&self) -> usize {
        (self.a * self.b + self.l) as usize
    }

    fn guard(&self, max: usize) -> Result<()> {
        if self.d() > max {
            return Err(Error::DimensionGuard { dim: self.d(), max });
        }
        Ok(())
    }
}

/// `(x_0, ..., x_d)` on `a x_0 + Σ x_i = a + d` to coordinates `x_0 - 1, ..., x_{d-1} - 1`.
fn chart(x: &[i64]) -> RationalVector {
    RationalVector::from_ints(&x[..x.len() - 1].iter().map(|v| v - 1).collect::<Vec<_>>())
}

/// `Δ = conv(S_d ∩ Z^(d+1))`, centred at its interior point.
pub fn wps_delta_guarded(p: &WpsParams, max: usize) -> Result<Polytope> {
    p.guard(max)?;
    let d = p.d();
    let (a, b, l) = (p.a as i64, p.b as i64, p.l as i64);
    let mut pts = Vec::with_capacity(2 * d);
    for i in 1..=d {
        let mut low = vec![0i64; d + 1];
        low[i] = a + d as i64;
        pts.push(chart(&low));
        let mut high = vec![0i64; d + 1];
        high[0] = b + 1;
        high[i] = l;
        pts.push(chart(&high));
    }
    hull(&pts)
}

pub fn wps_delta(p: &WpsParams) -> Result<Polytope> {
    wps_delta_guarded(p, max_dim())
}

/// `Δ^∨ = conv{v_0, ..., v_d}` with `a v_0 + Σ v_i = 0`, in the lattice dual to the chart of `Δ`.
pub fn wps_dual_guarded(p: &WpsParams, max: usize) -> Result<Polytope> {
    p.guard(max)?;
    let d = p.d();
    let mut pts: Vec<RationalVector> = (0..d)
        .map(|i| {
            let mut e = vec![0i64; d];
            e[i] = 1;
            RationalVector::from_ints(&e)
        })
        .collect();
    let mut last = vec![-1i64; d];
    last[0] = -(p.a as i64);
    pts.push(RationalVector::from_ints(&last));
    Ok(hull(&pts)?.with_side(Side::N))
}

pub fn wps_dual(p: &WpsParams) -> Result<Polytope> {
    wps_dual_guarded(p, max_dim())
}

fn sign(e: usize) -> Rat {
    if e % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn pow(x: u64, e: usize) -> Rat {
    Rat::from_integer(num_traits::pow(Int::from(x), e))
}

fn c(n: usize, k: usize) -> Rat {
    Rat::from_integer(binomial(n, k))
}

/// `e_str(X)` as the alternating face sum over the faces of `Δ`.
pub fn estr_closed_x(p: &WpsParams) -> Rat {
    let d = p.d();
    let (a, b) = (Rat::from_integer(Int::from(p.a)), Rat::from_integer(Int::from(p.b)));
    let ad = p.a + d as u64;
    let mut total = sign(d - 1) * (pow(ad, d) - pow(p.l, d)) / &a;
    for k in 1..d {
        let term = c(d, k - 1) * pow(p.l, d - k) / &b + c(d, k - 1) * pow(ad, d - k)
            + c(d, k) * (pow(ad, d - k) - pow(p.l, d - k)) / &a;
        total += sign(d - 1 - k) * term;
    }
    total
}

/// `e_str(X^∨) = (-1)^(d-1)(a - 1/a) - Σ_{i=1}^{d-2} ... + Σ_{i=2}^{d-1} ...`.
pub fn estr_closed_xvee(p: &WpsParams) -> Rat {
    let d = p.d();
    let a = Rat::from_integer(Int::from(p.a));
    let ad = p.a + d as u64;
    let mut total = sign(d - 1) * (&a - a.recip());
    for i in 1..=d - 2 {
        total -= sign(i) * c(d, i) * pow(ad, d - i - 1);
    }
    for i in 2..=d - 1 {
        total += sign(i) * c(d, i) * pow(ad, d - i) / &a;
    }
    total
}

/// The part of `e_str(X)` with denominator `b`, summed term by term.
pub fn aggregate_sum(p: &WpsParams) -> Rat {
    let d = p.d();
    let lb = Rat::from_integer(Int::from(p.l * p.b));
    let s = (0..=d - 2).fold(Rat::zero(), |acc, i| acc + sign(i) * c(d, i) * pow(p.l, d - i));
    sign(d - 2) * s / lb
}

/// `A = (-1)^(d-2) ((l-1)^d - (-1)^d - (-1)^(d-1) d l) / (l b)`.
pub fn aggregate_closed(p: &WpsParams) -> Rat {
    let d = p.d();
    let lb = Rat::from_integer(Int::from(p.l * p.b));
    let dl = Rat::from_integer(Int::from(d as u64 * p.l));
    sign(d - 2) * (pow(p.l - 1, d) - sign(d) - sign(d - 1) * dl) / lb
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub params: WpsParams,
    pub d: usize,
    pub aggregate: Rat,
    pub e_str_x: Rat,
    pub e_str_xvee: Rat,
    pub x_integrality: Integrality,
    pub xvee_integrality: Integrality,
    /// `b e_str(X) ∈ Z`.
    pub x_in_b_lattice: bool,
    /// `a e_str(X^∨) ∈ Z`.
    pub xvee_in_a_lattice: bool,
    pub mirror: MirrorReport,
}

pub fn integrality_report(p: &WpsParams) -> IntegralityReport {
    let x = estr_closed_x(p);
    let xv = estr_closed_xvee(p);
    let scaled = |v: &Rat, s: u64| (v * Rat::from_integer(Int::from(s))).is_integer();
    IntegralityReport {
        params: *p,
        d: p.d(),
        aggregate: aggregate_sum(p),
        x_integrality: Integrality::of(&x),
        xvee_integrality: Integrality::of(&xv),
        x_in_b_lattice: scaled(&x, p.b),
        xvee_in_a_lattice: scaled(&xv, p.a),
        mirror: MirrorReport::new(x.clone(), xv.clone(), p.d()),
        e_str_x: x,
        e_str_xvee: xv,
    }
}
