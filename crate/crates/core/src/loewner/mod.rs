//! Loewner energy of smooth Jordan curves from W-volumes.
//!
//! A curve is uniformized on both sides by Fourier-conjugation iterations. The
//! round metric is pulled back to the unit disk by each map, and the energy is
//! `-(4/π)` times the sum of the two W-volumes. The same sum is also computed
//! from the planar conformal-variation terms against the round metric, which
//! gives an independent two-dimensional pipeline.

mod conformal;
mod curve;
mod energy;
mod pullback;

pub use conformal::{
    uniformize, ConformalMap, Normalization, TheodorsenReport, UniformizationPair, UniformizeOptions,
};
pub use curve::{CurveSpec, JordanCurve, Smoothness};
pub use energy::{
    loewner_energy, loewner_energy_2d, loewner_report, report_for_pair, LoewnerEnergy, LoewnerEnergy2d,
    LoewnerReport, NEGATIVE_TOLERANCE, PIPELINE_TOLERANCE,
};
pub use pullback::{pullback_metric, Component, SphericalPullback};
