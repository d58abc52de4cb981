use thiserror::Error;

use crate::arrangement::SignVector;

/// Why a parameter choice was rejected as non-generic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genericity {
    /// Some set of hyperplanes fails to meet the slice in the expected dimension.
    NotSimple,
    /// The polarization is constant along some one-dimensional flat.
    PolarizationConstantOnFlat,
    /// The Gale-dual arrangement is not simple.
    DualNotSimple,
}

impl std::fmt::Display for Genericity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Genericity::NotSimple => "stability parameter is not simple",
            Genericity::PolarizationConstantOnFlat => "polarization is constant on a one-dimensional flat",
            Genericity::DualNotSimple => "Gale-dual arrangement is not simple",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix columns are linearly dependent")]
    RankDeficient,
    #[error("inclusion is not saturated (cokernel has torsion)")]
    NotSaturated,
    #[error("invalid tori sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("coordinate {0} is constant on the slice")]
    DegenerateHyperplane(usize),
    #[error("non-generic parameters: {0}")]
    NonGenericParameter(Genericity),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("component ({0}, {1}) is infinite-dimensional")]
    DimensionInfinite(SignVector, SignVector),
    #[error("cannot compose: target {0} differs from source {1}")]
    CompositionMismatch(SignVector, SignVector),
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("algebra is not basic: semisimple quotient has dimension {quotient} but {vertices} vertices")]
    NonBasicAlgebra { quotient: usize, vertices: usize },
    #[error("resolution of the simple at {0} did not terminate within degree {1}")]
    DimensionBoundExceeded(SignVector, usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable variant name for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RankDeficient => "RankDeficient",
            Error::NotSaturated => "NotSaturated",
            Error::InvalidSequence(_) => "InvalidSequence",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::NoSolution => "NoSolution",
            Error::DegenerateHyperplane(_) => "DegenerateHyperplane",
            Error::NonGenericParameter(_) => "NonGenericParameter",
            Error::ResourceLimit(_) => "ResourceLimit",
            Error::DimensionInfinite(_, _) => "DimensionInfinite",
            Error::CompositionMismatch(_, _) => "CompositionMismatch",
            Error::PresentationMismatch(_) => "PresentationMismatch",
            Error::NonBasicAlgebra { .. } => "NonBasicAlgebra",
            Error::DimensionBoundExceeded(_, _) => "DimensionBoundExceeded",
        }
    }
}
