//! Epstein surfaces in the upper half-space.
//!
//! The domain map sends each point of a planar domain to the envelope of the
//! horospheres prescribed by the 1-jet of `φ`. The caterpillar map does the
//! same for a boundary curve, with the leaf parameter `t` playing the role of
//! a fictitious normal derivative of `φ`. Both maps come with analytic frames
//! (point, normal and their coordinate derivatives) that feed the W-volume
//! integrands.

mod caterpillar;
mod domain_map;
mod frame;
mod sample;

pub use caterpillar::{
    caterpillar, caterpillar_denominator, caterpillar_frame, caterpillar_normal, caterpillar_point,
    caterpillar_shape, t_land, t_start,
};
pub use domain_map::{
    domain_epstein, domain_epstein_gauss, domain_epstein_shape, domain_frame, epstein_normal,
    epstein_point,
};
pub use frame::{covariant, hyp_dot, Frame};
pub use sample::{shape_eigenvalues, EpsteinSample};
