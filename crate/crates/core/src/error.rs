use thiserror::Error;

/// Errors raised by geometric constructions and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("point lies outside the domain of the {0} model")]
    OutsideModel(&'static str),

    #[error("tangent vector is not a unit vector orthogonal to the base point (defect {0:e})")]
    BadTangent(f64),

    #[error("ideal point is not interior to the disk")]
    NotInterior,

    #[error("disks do not overlap")]
    NotOverlapping,

    #[error("ideal point belongs to the excluded set")]
    PointInComplement,

    #[error("domain is {0}, a maximal disk requires a hyperbolic domain")]
    NotHyperbolic(&'static str),

    #[error("point lies in the convex hull")]
    InsideHull,

    #[error("critical point: derivative vanishes at the base point")]
    CriticalPoint,

    #[error("pole of the Möbius map at the image point")]
    MobiusPole,

    #[error("step size underflow at parameter {0}")]
    StepSizeUnderflow(f64),

    #[error("eigenvalue {0} lies on a singular branch of the tube flow")]
    SingularBranch(f64),

    #[error("chart boundary reached")]
    ChartBoundary,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
