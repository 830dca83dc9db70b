use std::f64::consts::TAU;

use num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyp3::Isometry;

type C = Complex<f64>;

/// Relative size below which trailing Fourier modes are dropped.
const MODE_CUTOFF: f64 = 1e-15;

/// Decay record of the Fourier coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Smoothness {
    /// Largest `|n|` with a retained coefficient.
    pub highest_mode: usize,
    /// Magnitude of the outermost retained modes relative to the largest one.
    pub tail_ratio: f64,
}

impl Smoothness {
    /// The truncation is resolved when the outermost modes have decayed to this level.
    pub const RESOLVED: f64 = 1e-10;

    pub fn resolved(&self) -> bool {
        self.tail_ratio <= Self::RESOLVED
    }
}

/// Closed curve `γ(t) = Σ c_n e^{int}` from a truncated Fourier series.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanCurve {
    modes: Vec<(i64, C)>,
    smoothness: Smoothness,
}

/// Serialized curve description: Fourier modes or boundary samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    /// Coefficients `c_n` of `e^{int}` as `[n, re, im]`.
    Fourier { modes: Vec<(i64, f64, f64)> },
    /// Equally spaced samples `γ(2πk/N)`.
    Samples { points: Vec<[f64; 2]> },
    /// Image of the unit circle under `Σ a_k z^k`, coefficients `[re, im]` from `k = 0`.
    Polynomial { coeffs: Vec<[f64; 2]> },
    Ellipse { center: [f64; 2], semi_major: f64, semi_minor: f64 },
    Circle { center: [f64; 2], radius: f64 },
}

impl CurveSpec {
    pub fn build(&self) -> Result<JordanCurve> {
        let cx = |v: [f64; 2]| C::new(v[0], v[1]);
        match self {
            CurveSpec::Fourier { modes } => {
                JordanCurve::from_fourier(modes.iter().map(|&(n, re, im)| (n, C::new(re, im))).collect())
            }
            CurveSpec::Samples { points } => {
                JordanCurve::from_samples(&points.iter().map(|&p| cx(p)).collect::<Vec<_>>())
            }
            CurveSpec::Polynomial { coeffs } => {
                JordanCurve::polynomial_image(&coeffs.iter().map(|&p| cx(p)).collect::<Vec<_>>())
            }
            CurveSpec::Ellipse { center, semi_major, semi_minor } => {
                JordanCurve::ellipse(cx(*center), *semi_major, *semi_minor)
            }
            CurveSpec::Circle { center, radius } => JordanCurve::circle(cx(*center), *radius),
        }
    }
}

impl JordanCurve {
    /// Validated curve from `(n, c_n)` pairs; repeated frequencies are summed.
    pub fn from_fourier(modes: Vec<(i64, C)>) -> Result<Self> {
        if modes.iter().any(|(_, c)| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidInput("non-finite Fourier coefficient".into()));
        }
        let mut merged: Vec<(i64, C)> = Vec::new();
        let mut sorted = modes;
        sorted.sort_by_key(|m| m.0);
        for (n, c) in sorted {
            match merged.last_mut() {
                Some(last) if last.0 == n => last.1 += c,
                _ => merged.push((n, c)),
            }
        }
        let peak = merged.iter().filter(|m| m.0 != 0).map(|m| m.1.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return Err(Error::InvalidInput("curve is a single point".into()));
        }
        merged.retain(|&(n, c)| n == 0 || c.norm() > MODE_CUTOFF * peak);
        let highest_mode = merged.iter().map(|m| m.0.unsigned_abs() as usize).max().unwrap_or(0);
        let tail = merged
            .iter()
            .filter(|m| m.0.unsigned_abs() as usize == highest_mode)
            .map(|m| m.1.norm())
            .fold(0.0, f64::max);
        let curve = Self { modes: merged, smoothness: Smoothness { highest_mode, tail_ratio: tail / peak } };
        curve.validate()?;
        Ok(curve)
    }

    /// Trigonometric interpolant of equally spaced samples, Nyquist mode dropped.
    pub fn from_samples(points: &[C]) -> Result<Self> {
        let n = points.len();
        if n < 8 {
            return Err(Error::InvalidInput(format!("need at least 8 samples, got {n}")));
        }
        let mut buf = points.to_vec();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let half = (n - 1) / 2;
        let mut modes = Vec::with_capacity(2 * half + 1);
        for (k, c) in buf.iter().enumerate() {
            let freq = if k <= half {
                k as i64
            } else if n - k <= half {
                k as i64 - n as i64
            } else {
                continue;
            };
            modes.push((freq, c / n as f64));
        }
        Self::from_fourier(modes)
    }

    pub fn circle(center: C, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
        }
        Self::from_fourier(vec![(0, center), (1, C::new(radius, 0.0))])
    }

    /// `center + a cos t + i b sin t`.
    pub fn ellipse(center: C, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidInput("ellipse semi-axes must be positive".into()));
        }
        Self::from_fourier(vec![(0, center), (1, C::new(0.5 * (a + b), 0.0)), (-1, C::new(0.5 * (a - b), 0.0))])
    }

    /// Image of the unit circle under the polynomial `Σ a_k z^k`.
    pub fn polynomial_image(coeffs: &[C]) -> Result<Self> {
        Self::from_fourier(coeffs.iter().enumerate().map(|(k, &a)| (k as i64, a)).collect())
    }

    pub fn modes(&self) -> &[(i64, C)] {
        &self.modes
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn to_spec(&self) -> CurveSpec {
        CurveSpec::Fourier { modes: self.modes.iter().map(|&(n, c)| (n, c.re, c.im)).collect() }
    }

    /// Mean of the parametrization, the zeroth Fourier coefficient.
    pub fn centroid(&self) -> C {
        self.modes.iter().find(|m| m.0 == 0).map_or(C::new(0.0, 0.0), |m| m.1)
    }

    /// `(γ(t), γ'(t))`.
    pub fn eval(&self, t: f64) -> (C, C) {
        let mut z = C::new(0.0, 0.0);
        let mut dz = C::new(0.0, 0.0);
        for &(n, c) in &self.modes {
            let e = c * C::from_polar(1.0, n as f64 * t);
            z += e;
            dz += e * C::new(0.0, n as f64);
        }
        (z, dz)
    }

    /// Equally spaced samples `γ(2πk/m)`.
    pub fn sample(&self, m: usize) -> Vec<C> {
        (0..m).map(|k| self.eval(TAU * k as f64 / m as f64).0).collect()
    }

    /// Number of samples used by the injectivity and tangent checks.
    pub fn check_resolution(&self) -> usize {
        (16 * self.smoothness.highest_mode + 512).next_power_of_two().max(2048)
    }

    /// Signed area enclosed, positive for counterclockwise curves.
    pub fn signed_area(&self) -> f64 {
        // Area = ½ Im ∫ conj(γ) γ' dt = π Σ n |c_n|^2.
        std::f64::consts::PI * self.modes.iter().map(|&(n, c)| n as f64 * c.norm_sqr()).sum::<f64>()
    }

    /// Reparametrization `t ↦ t + τ`.
    pub fn phase_shifted(&self, tau: f64) -> Self {
        let modes = self.modes.iter().map(|&(n, c)| (n, c * C::from_polar(1.0, n as f64 * tau))).collect();
        Self { modes, smoothness: self.smoothness }
    }

    /// Orientation-preserving parametrization of the complex-conjugate curve.
    pub fn conjugated(&self) -> Self {
        let modes = self.modes.iter().map(|&(n, c)| (n, c.conj())).collect();
        Self { modes, smoothness: self.smoothness }
    }

    /// Parametrization traversed backwards, `t ↦ γ(-t)`.
    pub fn reversed(&self) -> Self {
        let mut modes: Vec<_> = self.modes.iter().map(|&(n, c)| (-n, c)).collect();
        modes.sort_by_key(|m| m.0);
        Self { modes, smoothness: self.smoothness }
    }

    /// Image under `z ↦ λz + μ`.
    pub fn similar(&self, lambda: C, mu: C) -> Result<Self> {
        if lambda.norm() == 0.0 {
            return Err(Error::InvalidInput("similarity with zero scale".into()));
        }
        let mut modes: Vec<_> = self.modes.iter().map(|&(n, c)| (n, lambda * c)).collect();
        modes.push((0, mu));
        Self::from_fourier(modes)
    }

    /// Image under a Möbius map, re-expanded from `m` samples.
    pub fn mobius_image(&self, map: &Isometry<f64>, m: usize) -> Result<Self> {
        if let Some(pole) = map.pole() {
            let near = self.sample(self.check_resolution()).iter().map(|z| (z - pole).norm()).fold(f64::MAX, f64::min);
            if near < 1e-6 * self.diameter() {
                return Err(Error::InvalidInput(format!("Möbius pole {pole} lies on the curve")));
            }
        }
        let pts: Vec<C> = self.sample(m).iter().map(|&z| map.apply_boundary(z)).collect();
        Self::from_samples(&pts)
    }

    fn diameter(&self) -> f64 {
        2.0 * self.modes.iter().filter(|m| m.0 != 0).map(|m| m.1.norm()).sum::<f64>()
    }

    fn validate(&self) -> Result<()> {
        let m = self.check_resolution();
        let scale = self.diameter();
        let mut min_speed = f64::MAX;
        let mut pts = Vec::with_capacity(m);
        for k in 0..m {
            let (z, dz) = self.eval(TAU * k as f64 / m as f64);
            min_speed = min_speed.min(dz.norm());
            pts.push(z);
        }
        if min_speed < 1e-8 * scale {
            return Err(Error::InvalidInput(format!("tangent degenerates: min |γ'| = {min_speed:.3e}")));
        }
        if let Some((i, j)) = polygon_self_intersection(&pts) {
            return Err(Error::InvalidInput(format!(
                "curve is not simple: sample segments {i} and {j} cross"
            )));
        }
        Ok(())
    }
}

fn cross(a: C, b: C) -> f64 {
    a.re * b.im - a.im * b.re
}

/// First pair of non-adjacent crossing edges of a closed polygon, if any.
fn polygon_self_intersection(pts: &[C]) -> Option<(usize, usize)> {
    let m = pts.len();
    let seg = |i: usize| (pts[i], pts[(i + 1) % m]);
    // Bounding boxes sorted by their left edge give a sweep that skips distant pairs.
    let mut order: Vec<usize> = (0..m).collect();
    let lo = |i: usize| seg(i).0.re.min(seg(i).1.re);
    let hi = |i: usize| seg(i).0.re.max(seg(i).1.re);
    order.sort_by(|&a, &b| lo(a).total_cmp(&lo(b)));
    for (k, &i) in order.iter().enumerate() {
        let (p0, p1) = seg(i);
        for &j in &order[k + 1..] {
            if lo(j) > hi(i) {
                break;
            }
            if j == (i + 1) % m || i == (j + 1) % m {
                continue;
            }
            let (q0, q1) = seg(j);
            let d1 = cross(p1 - p0, q0 - p0);
            let d2 = cross(p1 - p0, q1 - p0);
            let d3 = cross(q1 - q0, p0 - q0);
            let d4 = cross(q1 - q0, p1 - q0);
            if d1 * d2 <= 0.0 && d3 * d4 <= 0.0 {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}
