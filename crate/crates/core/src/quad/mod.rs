//! Quadrature and numerical differentiation.
//!
//! Periodic trapezoid rules on circles, Gauss–Legendre rules radially, a smooth
//! partition of unity for multiply connected circle domains, tensor rules for
//! parametrized surfaces and Richardson-extrapolated differences. Every
//! reduction evaluates in parallel and sums pairwise in a fixed order.

mod integrate;
mod rules;
mod spec;

pub use integrate::{
    differentiate, hyperbolic_area_form, integrate_boundary, integrate_domain, integrate_surface,
    smooth_step, weighted_sum, weighted_sum_n, Derivative, DomainRule, Estimate, TensorRule,
};
pub use rules::{gauss_legendre, gauss_legendre_on, pairwise_sum, periodic_trapezoid};
pub use spec::QuadratureSpec;
