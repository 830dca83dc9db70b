//! Conformal metrics `e^{2φ}|dz|^2` on circle-bounded planar domains.
//!
//! `φ` is always a log-density against the flat metric. Oracles supply `φ`
//! with its Euclidean gradient and Hessian; boundary jets, curvatures and
//! the built-in families are derived from that interface.

mod domain;
mod families;
mod oracle;
mod spec;

pub use domain::{CircleDomain, DISJOINT_MARGIN};
pub use families::{
    CompactBump, Flat, FourierBump, GaussianBump, HyperbolicDisk, MobiusPullback, RadialQuadratic,
    RoundSphere, ScaledMetric, SumMetric,
};
pub use oracle::{
    geodesic_curvature, oracle_selfcheck, outward_derivative, scal_curvature, BoundaryJet, Jet2,
    MetricOracle, SelfCheckReport,
};
pub use spec::MetricSpec;
