//! Hyperbolic ends over finite-complement domains of the Riemann sphere.
//!
//! The crate works in the hyperboloid model of hyperbolic 3-space inside
//! R^{3,1}. Disks in the Riemann sphere are represented by their de Sitter
//! poles, horoballs by scaled null vectors, and the hyperbolic end over
//! `Ĉ \ P` implicitly by the finite set `P`.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod disks;
pub mod ends;
pub mod error;
pub mod horoball;
pub mod kp;
pub mod lorentz;
pub mod schwarzian;
pub mod surfaces;

pub use disks::{
    disk_area_form, disk_contains, disk_from_circle, disk_from_line, disk_geodesic_arc, disk_relation,
    halfspace_signed_distance, DiskRelation, EuclideanDisk, LineSide, Membership, Orientation, OrientedDisk,
};
pub use ends::{
    end_height, end_hessian_probe, end_horoball_check, end_project, end_trace_geodesic, EndOverDomain, RaySample,
};
pub use error::{GeomError, Result};
pub use horoball::{horoball_contains, horoball_make, inscribed_horoball, Horoball};
pub use kp::{kp_classify, kp_form, kp_max_disk, DomainType, FiniteComplementDomain};
pub use lorentz::{
    geodesic_point, horizon, hyperbolic_distance, ideal_lift, ideal_point_of_null, minkowski_inner, model_convert,
    HPoint, IdealPoint, LorentzMatrix, MinkowskiVec, MobiusMap, Model, ModelPoint, Tolerances,
};
pub use schwarzian::{mobius_invariance_check, schwarzian_jet, schwarzian_solve, Expr, HolomorphicField, Jet};
pub use surfaces::{
    conformality_defect, shape_flow, surface_apriori_check, surface_forms, surface_gauss_map,
    surface_horospherical_metric, surface_normal_offset, surface_schwarzian, ExplicitSurface, HoroOrientation,
    ShapeState, SurfaceData,
};
