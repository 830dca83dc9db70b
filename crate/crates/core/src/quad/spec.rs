use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node counts for every quadrature used by the pipelines. All counts are powers of two
/// so that halving studies reuse nested resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Trapezoid samples per boundary circle.
    pub boundary: usize,
    /// Gauss–Legendre nodes in the radial direction of each polar patch.
    pub radial: usize,
    /// Trapezoid nodes in the angular direction of each polar patch.
    pub angular: usize,
    /// Gauss–Legendre nodes across each caterpillar strip.
    pub strip: usize,
    /// Gauss–Legendre nodes in the radial direction of each geodesic cap.
    pub cap: usize,
    /// Cells per side of the Cartesian grid covering the interior of multiply connected domains.
    pub cartesian: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { boundary: 512, radial: 128, angular: 256, strip: 64, cap: 64, cartesian: 1024 }
    }
}

impl QuadratureSpec {
    /// Spec with every count replaced by `n` scaled per field from the default ratios.
    pub fn with_resolution(n: usize) -> Self {
        let d = Self::default();
        let scale = |v: usize| ((v * n) / d.boundary).max(4);
        Self {
            boundary: scale(d.boundary),
            radial: scale(d.radial),
            angular: scale(d.angular),
            strip: scale(d.strip),
            cap: scale(d.cap),
            cartesian: scale(d.cartesian),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("boundary", self.boundary),
            ("radial", self.radial),
            ("angular", self.angular),
            ("strip", self.strip),
            ("cap", self.cap),
            ("cartesian", self.cartesian),
        ] {
            if v < 4 || !v.is_power_of_two() {
                return Err(Error::InvalidInput(format!(
                    "quadrature count `{name}` must be a power of two >= 4, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Every count halved (floored at 4).
    pub fn halved(&self) -> Self {
        let h = |v: usize| (v / 2).max(4);
        Self {
            boundary: h(self.boundary),
            radial: h(self.radial),
            angular: h(self.angular),
            strip: h(self.strip),
            cap: h(self.cap),
            cartesian: h(self.cartesian),
        }
    }

    /// Every count doubled.
    pub fn doubled(&self) -> Self {
        Self {
            boundary: 2 * self.boundary,
            radial: 2 * self.radial,
            angular: 2 * self.angular,
            strip: 2 * self.strip,
            cap: 2 * self.cap,
            cartesian: 2 * self.cartesian,
        }
    }
}
