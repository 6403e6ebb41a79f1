//! Exact lattice-polytope engine for Calabi-Yau hypersurfaces in toric varieties.
//!
//! All arithmetic is exact over the integers and rationals.

pub mod cone;
mod dd;
pub mod error;
pub mod fine;
pub mod genfun;
pub mod lattice;
pub mod linalg;
pub mod mavlyutov;
pub mod measures;
pub mod poly;
pub mod polytope;
pub mod stringy;
pub mod wps;

pub use cone::Cone;
pub use error::{Error, Result};
pub use linalg::{IntegerMatrix, RationalVector};
pub use poly::UPolynomial;
pub use polytope::{hull, Face, FaceId, FaceLattice, Halfspace, Polytope, Side};
