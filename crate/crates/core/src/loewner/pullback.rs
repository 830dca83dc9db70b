use std::f64::consts::LN_2;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::conformal::{ConformalMap, UniformizationPair};
use crate::error::{Error, Result};
use crate::metric::{Jet2, MetricOracle};

type C = Complex<f64>;

/// Complementary component of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    /// Bounded component, parametrized by `f₁` on `𝔻`.
    Interior,
    /// Unbounded component, parametrized by `f₂(1/w)` for `w ∈ 𝔻`.
    Exterior,
}

/// Round metric pulled back by `T ∘ M` on the unit disk.
///
/// `M` is a holomorphic map given by its Taylor series and `T(z) = (az + b)/(cz + d)`.
/// The log-density is `φ = log 2 + log|ad - bc| + log|M'| - log(|aM + b|^2 + |cM + d|^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPullback {
    map: ConformalMap,
    post: [C; 4],
    log_det: f64,
}

impl SphericalPullback {
    /// Radial and angular sizes of the grid on which `M'` is checked.
    const DERIVATIVE_GRID: (usize, usize) = (64, 512);

    pub fn new(map: ConformalMap, post: [C; 4]) -> Result<Self> {
        let det = post[0] * post[3] - post[1] * post[2];
        if !(det.norm() > 0.0 && det.norm().is_finite()) {
            return Err(Error::InvalidInput("singular Möbius post-composition".into()));
        }
        let (lo, hi) = map.derivative_range(Self::DERIVATIVE_GRID.0, Self::DERIVATIVE_GRID.1);
        if !(lo > 1e-8 * hi) {
            return Err(Error::DerivativeVanishes { modulus: lo });
        }
        Ok(Self { map, post, log_det: det.norm().ln() })
    }

    pub fn map(&self) -> &ConformalMap {
        &self.map
    }

    pub fn post(&self) -> [C; 4] {
        self.post
    }
}

impl MetricOracle<f64> for SphericalPullback {
    fn jet(&self, z: C) -> Jet2<f64> {
        let [m, m1, m2, m3] = self.map.eval(z);
        let [a, b, c, d] = self.post;
        let l1 = m2 / m1;
        let mut jet = Jet2::real_part(m1.ln(), l1, m3 / m1 - l1 * l1);
        jet.value += LN_2 + self.log_det;
        // ψ = -log Q with Q = |A|^2 + |B|^2, A = aM + b, B = cM + d.
        let (p, q) = (a * m + b, c * m + d);
        let (p1, q1, p2, q2) = (a * m1, c * m1, a * m2, c * m2);
        let big_q = p.norm_sqr() + q.norm_sqr();
        let qz = p1 * p.conj() + q1 * q.conj();
        let qzz = p2 * p.conj() + q2 * q.conj();
        let qzzb = p1.norm_sqr() + q1.norm_sqr();
        let pz = -qz / big_q;
        let pzz = -qzz / big_q + qz * qz / (big_q * big_q);
        let pzzb = -qzzb / big_q + qz.norm_sqr() / (big_q * big_q);
        let psi = Jet2 {
            value: -big_q.ln(),
            grad: [2.0 * pz.re, -2.0 * pz.im],
            hess: [
                [2.0 * pzz.re + 2.0 * pzzb, -2.0 * pzz.im],
                [-2.0 * pzz.im, -2.0 * pzz.re + 2.0 * pzzb],
            ],
        };
        jet.add(&psi)
    }

    fn describe(&self) -> String {
        format!("spherical_pullback({} Taylor terms)", self.map.coeffs.len())
    }
}

/// `f_i^* g_{S²}` on the unit disk, the exterior in the coordinate `w = 1/z`.
///
/// `1/z` is an isometry of the round metric, so the exterior pullback equals the
/// pullback by `w ↦ base + 1/G(w)`.
pub fn pullback_metric(pair: &UniformizationPair, component: Component) -> Result<SphericalPullback> {
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    match component {
        Component::Interior => SphericalPullback::new(pair.interior.clone(), [one, pair.base, zero, one]),
        Component::Exterior => SphericalPullback::new(pair.exterior.clone(), [pair.base, one, one, zero]),
    }
}
