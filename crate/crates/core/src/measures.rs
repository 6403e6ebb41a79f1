//! Lattice-normalized volumes, h*-vectors and the face polynomials `E(Θ, u)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::count_dilation;
use crate::linalg::{det_rat, lattice_basis_of_rational_span, to_rats, Coordinates, Rat};
use crate::poly::UPolynomial;
use crate::polytope::Polytope;

/// `k!` times the Euclidean volume, measured against the lattice `Z^d ∩ span(P - v_0)`.
/// A point has volume 1.
pub fn normalized_volume(p: &Polytope) -> Rat {
    if p.dim() == 0 {
        return Rat::one();
    }
    let verts = p.vertices();
    let v0 = &verts[0];
    let dirs: Vec<Vec<Rat>> = verts[1..].iter().map(|v| (v - v0).into_coords()).collect();
    let basis = lattice_basis_of_rational_span(&dirs, p.ambient_dim());
    debug_assert_eq!(basis.len(), p.dim());
    let coords = Coordinates::new(&basis.iter().map(|b| to_rats(b)).collect::<Vec<_>>()).expect("basis");
    p.triangulation()
        .iter()
        .map(|s| {
            let a = &verts[s[0]];
            let rows: Vec<Vec<Rat>> = s[1..].iter().map(|&i| coords.of((&verts[i] - a).coords())).collect();
            det_rat(&rows).abs()
        })
        .fold(Rat::zero(), |acc, x| acc + x)
}

/// Pulling triangulation of a polytope, as lists of vertex indices.
pub fn triangulation(p: &Polytope) -> Vec<Vec<usize>> {
    p.triangulation()
}

/// Numerator coefficients `ψ_0..ψ_k` of the Ehrhart series of a `k`-dimensional lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarVector {
    pub k: usize,
    pub psi: Vec<BigInt>,
}

impl HStarVector {
    pub fn sum(&self) -> BigInt {
        self.psi.iter().sum()
    }

    /// `ψ_0 = 1` and every `ψ_i >= 0`.
    pub fn is_admissible(&self) -> bool {
        self.psi.first().is_some_and(|p| p.is_one()) && self.psi.iter().all(|p| !p.is_negative())
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// h*-vector from the dilation counts `|lΘ ∩ Z^d|`, `l = 0..=k`.
pub fn hstar(p: &Polytope) -> Result<HStarVector> {
    if !p.is_lattice() {
        return Err(Error::NonLatticeVertices);
    }
    let k = p.dim();
    let counts: Vec<BigInt> = (0..=k as u64).map(|l| BigInt::from(count_dilation(p, l))).collect();
    let psi = (0..=k)
        .map(|j| {
            (0..=j).fold(BigInt::zero(), |acc, i| {
                let t = binomial(k + 1, i) * &counts[j - i];
                if i % 2 == 0 {
                    acc + t
                } else {
                    acc - t
                }
            })
        })
        .collect();
    Ok(HStarVector { k, psi })
}

/// `E(Θ, u) = ((u-1)^k - (-1)^k)/u + (-1)^(k-1) Σ_{i>=1} ψ_i u^(i-1)`.
pub fn e_theta(p: &Polytope) -> Result<UPolynomial> {
    let k = p.dim();
    if k == 0 {
        return Err(Error::ZeroDimensionalFace);
    }
    let h = hstar(p)?;
    e_theta_from_hstar(&h)
}

pub fn e_theta_from_hstar(h: &HStarVector) -> Result<UPolynomial> {
    let k = h.k;
    if k == 0 {
        return Err(Error::ZeroDimensionalFace);
    }
    let sign = |e: usize| if e % 2 == 0 { Rat::one() } else { -Rat::one() };
    let head = &UPolynomial::u_minus_one().pow(k) - &UPolynomial::constant(sign(k));
    debug_assert!(head.coeff(0).is_zero());
    let head = UPolynomial::new(head.coeffs().iter().skip(1).cloned().collect());
    let tail = UPolynomial::new(h.psi.iter().skip(1).map(|x| Rat::from_integer(x.clone()) * sign(k - 1)).collect());
    Ok(&head + &tail)
}
