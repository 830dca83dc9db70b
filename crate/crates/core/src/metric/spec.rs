use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::families::*;
use super::oracle::MetricOracle;
use crate::error::{Error, Result};
use crate::hyp3::Isometry;
use crate::loewner::{ConformalMap, SphericalPullback};

/// Name-and-parameters description of a built-in metric family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricSpec {
    Flat {
        #[serde(default)]
        c: f64,
    },
    RoundSphere,
    HyperbolicDisk,
    FourierBump {
        eps: f64,
        /// Coefficients `a_n = [re, im]` of `z^n`, starting at `n = 0`.
        coeffs: Vec<[f64; 2]>,
    },
    GaussianBump {
        amplitude: f64,
        center: [f64; 2],
        width: f64,
    },
    CompactBump {
        amplitude: f64,
        center: [f64; 2],
        radius: f64,
    },
    RadialQuadratic {
        eps: f64,
    },
    Sum {
        terms: Vec<MetricSpec>,
    },
    Scaled {
        factor: f64,
        inner: Box<MetricSpec>,
    },
    /// Pullback by the Möbius map with matrix `[a, b, c, d]`, entries `[re, im]`.
    Mobius {
        matrix: [[f64; 2]; 4],
        inner: Box<MetricSpec>,
    },
    /// Round metric pulled back by `T ∘ M`, with `M = Σ a_k z^k` and `T` the matrix `[a, b, c, d]`.
    Pullback {
        coeffs: Vec<[f64; 2]>,
        #[serde(default = "identity_matrix")]
        matrix: [[f64; 2]; 4],
    },
}

fn identity_matrix() -> [[f64; 2]; 4] {
    [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
}

fn cx(v: [f64; 2]) -> Complex<f64> {
    Complex::new(v[0], v[1])
}

impl MetricSpec {
    pub fn build(&self) -> Result<Arc<dyn MetricOracle<f64>>> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("{name} must be positive, got {v}")))
            }
        };
        Ok(match self {
            MetricSpec::Flat { c } => Arc::new(Flat { c: *c }),
            MetricSpec::RoundSphere => Arc::new(RoundSphere),
            MetricSpec::HyperbolicDisk => Arc::new(HyperbolicDisk),
            MetricSpec::FourierBump { eps, coeffs } => {
                Arc::new(FourierBump { eps: *eps, coeffs: coeffs.iter().map(|&a| cx(a)).collect() })
            }
            MetricSpec::GaussianBump { amplitude, center, width } => {
                positive("width", *width)?;
                Arc::new(GaussianBump { amplitude: *amplitude, center: cx(*center), width: *width })
            }
            MetricSpec::CompactBump { amplitude, center, radius } => {
                positive("radius", *radius)?;
                Arc::new(CompactBump { amplitude: *amplitude, center: cx(*center), radius: *radius })
            }
            MetricSpec::RadialQuadratic { eps } => Arc::new(RadialQuadratic { eps: *eps }),
            MetricSpec::Sum { terms } => Arc::new(SumMetric {
                terms: terms.iter().map(|t| t.build()).collect::<Result<Vec<_>>>()?,
            }),
            MetricSpec::Scaled { factor, inner } => {
                Arc::new(ScaledMetric { factor: *factor, inner: inner.build()? })
            }
            MetricSpec::Mobius { matrix, inner } => {
                let m = Isometry::new(cx(matrix[0]), cx(matrix[1]), cx(matrix[2]), cx(matrix[3]))?;
                Arc::new(MobiusPullback::new(m, inner.build()?))
            }
            MetricSpec::Pullback { coeffs, matrix } => {
                let map = ConformalMap { coeffs: coeffs.iter().map(|&a| cx(a)).collect() };
                Arc::new(SphericalPullback::new(map, matrix.map(cx))?)
            }
        })
    }

    /// `s φ` as a spec.
    pub fn scaled(&self, factor: f64) -> Self {
        MetricSpec::Scaled { factor, inner: Box::new(self.clone()) }
    }

    /// `φ + ψ` as a spec.
    pub fn plus(&self, other: &MetricSpec) -> Self {
        MetricSpec::Sum { terms: vec![self.clone(), other.clone()] }
    }
}
