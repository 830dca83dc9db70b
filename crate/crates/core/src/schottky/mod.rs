//! Schottky and reflection-group configurations of round circles.
//!
//! The `2g` boundary planes over the circles bound a fundamental domain in
//! hyperbolic 3-space. The convex core of the reflection group, restricted
//! to that domain, is a polyhedron whose faces are pieces of the boundary
//! planes and right-angled hexagons lying in planes orthogonal to three
//! boundary planes. It is built in the Klein model, where hyperbolic
//! half-spaces are Euclidean half-spaces, and measured hyperbolically.
//!
//! When all circles are orthogonal to one circle the group is Fuchsian and
//! the core collapses to a doubled plane polygon. That case is assembled
//! directly, with exterior angles `pi` along the rim, `0` along interior
//! diagonals and zero volume.

mod config;
mod core;
mod measure;

pub use config::{
    min_plane_distance, CircleSpec, DistanceReport, PairingSpec, SchottkyConfiguration, SchottkySpec,
};
pub use core::{
    convex_core, ConvexCoreComplex, CoreVertex, Edge, EdgeKind, EulerData, Face, FaceKind,
    INCIDENCE_TOLERANCE, KLEIN_TOLERANCE,
};
pub use measure::{
    bending_term, boundary_area, certificate, core_mesh, core_volume, core_volume_from,
    exterior_angles, gauss_bonnet_check, vr_upper_bounds, w_core, w_core_scan, AreaReport,
    CoreScan, GaussBonnetFace, GaussBonnetReport, Inequality, ScanPoint, VolumeEstimate,
    VrCertificate, WCore, VOLUME_TOLERANCE,
};
