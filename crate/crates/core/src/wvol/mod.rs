//! W-volume of circle domains.
//!
//! The piecewise sphere glues the domain Epstein surface, one caterpillar strip
//! per boundary circle and the geodesic caps into a closed surface. Its enclosed
//! volume, mean-curvature integral and caterpillar area term combine into `W`.
//! A planar evaluation of the conformal-variation formula provides an
//! independent pipeline for the difference of two W-volumes.

mod export;
mod polyakov;
mod sphere;
mod terms;

pub use polyakov::{
    conformal_change, halving_study, polyakov_rhs, transport, w_derivative_check, w_difference_check, DerivativeCheck,
    DifferenceCheck, HalvingStudy, PolyakovTerms, DIFFERENCE_TOLERANCE, HALVING_FLOOR,
};
pub use sphere::{
    build_piecewise_sphere, BuildReport, PiecewiseSphere, Strip, StripNode, ORIENTATION_CAP,
    ORIENTATION_CATERPILLAR, ORIENTATION_EPSTEIN,
};
pub use terms::{
    caterpillar_area_term, enclosed_volume, mean_curvature_integral, w_volume, AreaTerm, PieceTerms, VolumeReport,
    WBreakdown,
};
