//! Models of hyperbolic 3-space: upper half-space, Klein ball and hyperboloid.
//!
//! The upper half-space model carries the Epstein and W-volume computations;
//! the Klein ball, where hyperbolic convexity is Euclidean convexity, carries
//! the convex-core construction. Geodesic planes are handled through their
//! unit spacelike normals on the hyperboloid.

mod circle;
mod isometry;
pub mod minkowski;
mod plane;
mod point;

pub use circle::{CircleBdry, Side};
pub use isometry::{circumcircle, Isometry};
pub use plane::{
    common_perpendicular, dihedral_angle, mutual_orthogonal_plane, perpendicular_feet,
    plane_distance, GeodesicPlane, Perpendicular, PlaneBoundary,
};
pub use point::{boundary_to_sphere, PointKlein, PointUHS};
