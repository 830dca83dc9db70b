//! W-volume of conformal metrics on circle-bounded planar domains.
//!
//! A metric `e^{2φ}|dz|^2` on a domain bounded by circles is realized in
//! hyperbolic 3-space as a closed piecewise surface: the Epstein surface of the
//! metric over the domain, caterpillar strips along each boundary circle and
//! geodesic caps in the planes bounded by those circles. The W-volume is the
//! enclosed volume minus half the total mean curvature minus three quarters of
//! the boundary term.
//!
//! Modules:
//! - [`hyp3`]: upper half-space, Klein and hyperboloid models, geodesic planes, isometries.
//! - [`metric`]: metric oracles with analytic jets, domains and built-in families.
//! - [`epstein`]: Epstein surfaces and caterpillar strips with their closed-form geometry.
//! - [`quad`]: quadrature rules for domains, boundaries and surfaces.
//! - [`wvol`]: the W-volume and the planar conformal-variation formula.
//! - [`schottky`]: convex cores of classical Schottky groups and renormalized-volume bounds.
//! - [`loewner`]: Loewner energy of Jordan curves from two W-volumes.
//!
//! The geometric kernels are generic over [`scalar::Real`]; the aliases below fix `f64`.

pub mod epstein;
pub mod error;
pub mod hyp3;
pub mod loewner;
pub mod mesh;
pub mod metric;
pub mod quad;
pub mod scalar;
pub mod schottky;
pub mod wvol;
mod vec3;

pub use error::{Error, Result};

/// Library version stamped into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type PointUHS = hyp3::PointUHS<f64>;
pub type PointKlein = hyp3::PointKlein<f64>;
pub type CircleBdry = hyp3::CircleBdry<f64>;
pub type GeodesicPlane = hyp3::GeodesicPlane<f64>;
pub type Isometry = hyp3::Isometry<f64>;
pub type CircleDomain = metric::CircleDomain<f64>;
pub type Jet2 = metric::Jet2<f64>;
pub type BoundaryJet = metric::BoundaryJet<f64>;
pub type Frame = epstein::Frame<f64>;
pub type EpsteinSample = epstein::EpsteinSample<f64>;
