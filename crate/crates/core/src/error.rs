use std::fmt;

use thiserror::Error;

/// One violated standing assumption on a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    WrongRayLength {
        ray: usize,
        len: usize,
    },
    NonPrimitiveRay {
        ray: usize,
    },
    DuplicateRay {
        first: usize,
        second: usize,
    },
    RaysDoNotSpan {
        rank: usize,
    },
    EmptyCone {
        cone: usize,
    },
    RayIndexOutOfRange {
        cone: usize,
        index: usize,
    },
    NotStronglyConvex {
        cone: usize,
    },
    /// The ray either is not an extremal ray of the cone, or lies in the
    /// cone without being listed.
    RayNotFaceOfCone {
        cone: usize,
        ray: usize,
    },
    BadIntersection {
        first: usize,
        second: usize,
    },
}

impl FanViolation {
    pub fn kind(&self) -> &'static str {
        match self {
            FanViolation::WrongRayLength { .. } => "WrongRayLength",
            FanViolation::NonPrimitiveRay { .. } => "NonPrimitiveRay",
            FanViolation::DuplicateRay { .. } => "DuplicateRay",
            FanViolation::RaysDoNotSpan { .. } => "RaysDoNotSpan",
            FanViolation::EmptyCone { .. } => "EmptyCone",
            FanViolation::RayIndexOutOfRange { .. } => "RayIndexOutOfRange",
            FanViolation::NotStronglyConvex { .. } => "NotStronglyConvex",
            FanViolation::RayNotFaceOfCone { .. } => "RayNotFaceOfCone",
            FanViolation::BadIntersection { .. } => "BadIntersection",
        }
    }
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::WrongRayLength { ray, len } => {
                write!(f, "WrongRayLength: ray {ray} has {len} coordinates")
            }
            FanViolation::NonPrimitiveRay { ray } => write!(f, "NonPrimitiveRay: ray {ray}"),
            FanViolation::DuplicateRay { first, second } => {
                write!(f, "DuplicateRay: rays {first} and {second}")
            }
            FanViolation::RaysDoNotSpan { rank } => {
                write!(f, "RaysDoNotSpan: rays span a space of dimension {rank}")
            }
            FanViolation::EmptyCone { cone } => write!(f, "EmptyCone: cone {cone}"),
            FanViolation::RayIndexOutOfRange { cone, index } => {
                write!(f, "RayIndexOutOfRange: cone {cone} uses ray {index}")
            }
            FanViolation::NotStronglyConvex { cone } => write!(f, "NotStronglyConvex: cone {cone}"),
            FanViolation::RayNotFaceOfCone { cone, ray } => {
                write!(f, "RayNotFaceOfCone: ray {ray} in cone {cone}")
            }
            FanViolation::BadIntersection { first, second } => {
                write!(f, "BadIntersection: cones {first} and {second}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("invalid fan: {}", join(.0))]
    InvalidFan(Vec<FanViolation>),
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("graded piece is infinite dimensional")]
    InfinitePiece,
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not simplicial")]
    NotSimplicialFan,
    #[error("cone is simplicial")]
    SimplicialCone,
    #[error("point lies in the exceptional locus")]
    PointInExceptionalLocus,
    #[error("enumeration bound {bound} is too small")]
    BoundTooSmall { bound: i64 },
    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cone {0:?} is not a cone of the fan")]
    UnknownCone(Vec<usize>),
    #[error("{0}")]
    InvalidArgument(String),
}

impl ToricError {
    pub fn kind(&self) -> &'static str {
        match self {
            ToricError::InvalidFan(_) => "InvalidFan",
            ToricError::UnboundedPolytope => "UnboundedPolytope",
            ToricError::InfinitePiece => "InfinitePiece",
            ToricError::NotComplete => "NotComplete",
            ToricError::NotSimplicialFan => "NotSimplicialFan",
            ToricError::SimplicialCone => "SimplicialCone",
            ToricError::PointInExceptionalLocus => "PointInExceptionalLocus",
            ToricError::BoundTooSmall { .. } => "BoundTooSmall",
            ToricError::LengthMismatch { .. } => "LengthMismatch",
            ToricError::UnknownCone(_) => "UnknownCone",
            ToricError::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

fn join(v: &[FanViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, ToricError>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(ToricError::LengthMismatch { expected, found })
    }
}
