//! Error type shared by every module of the engine.

use thiserror::Error;

/// Domain errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("empty input")]
    EmptyInput,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("cone has a nontrivial lineality space")]
    Lineality,
    #[error("the origin is not an interior point")]
    OriginNotInterior,
    #[error("polytope is not full-dimensional (dimension {dim} in ambient {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("polytope has non-lattice vertices")]
    NonLatticeVertices,
    #[error("Fine interior is empty")]
    EmptyFineInterior,
    #[error("Fine interior is not the origin")]
    NotNormalized,
    #[error("polytope is not almost pseudoreflexive")]
    NotAlmostPseudoreflexive,
    #[error("polytope is not pseudoreflexive")]
    NotPseudoreflexive,
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error("face is singular")]
    SingularFace,
    #[error("face is zero-dimensional")]
    ZeroDimensionalFace,
    #[error("grading is not positive on a cone generator")]
    NonPositiveGrading,
    #[error("rational function has a pole at the evaluation point")]
    Pole,
    #[error("power series expansion needs a denominator nonzero at 0")]
    SeriesUndefined,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension {dim} exceeds the materialization guard {max}")]
    DimensionGuard { dim: usize, max: usize },
    #[error("face index out of range")]
    NoSuchFace,
    #[error("operation needs a proper face")]
    ImproperFace,
    #[error("polyhedron is unbounded")]
    Unbounded,
}

impl Error {
    /// Stable variant name, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroVector => "ZeroVector",
            Error::EmptyInput => "EmptyInput",
            Error::DependentGenerators => "DependentGenerators",
            Error::Lineality => "Lineality",
            Error::OriginNotInterior => "OriginNotInterior",
            Error::NotFullDimensional { .. } => "NotFullDimensional",
            Error::NonLatticeVertices => "NonLatticeVertices",
            Error::EmptyFineInterior => "EmptyFineInterior",
            Error::NotNormalized => "NotNormalized",
            Error::NotAlmostPseudoreflexive => "NotAlmostPseudoreflexive",
            Error::NotPseudoreflexive => "NotPseudoreflexive",
            Error::NotReflexive => "NotReflexive",
            Error::SingularFace => "SingularFace",
            Error::ZeroDimensionalFace => "ZeroDimensionalFace",
            Error::NonPositiveGrading => "NonPositiveGrading",
            Error::Pole => "Pole",
            Error::SeriesUndefined => "SeriesUndefined",
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidParams(_) => "InvalidParams",
            Error::DimensionGuard { .. } => "DimensionGuard",
            Error::NoSuchFace => "NoSuchFace",
            Error::ImproperFace => "ImproperFace",
            Error::Unbounded => "Unbounded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
