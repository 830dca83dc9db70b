use num_complex::Complex;

use super::domain::CircleDomain;
use crate::error::{Error, Result};
use crate::hyp3::CircleBdry;
use crate::scalar::{lit, Real};

/// Value, Euclidean gradient and Hessian of the log-density `φ` at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2<T> {
    pub value: T,
    pub grad: [T; 2],
    pub hess: [[T; 2]; 2],
}

impl<T: Real> Jet2<T> {
    pub fn constant(value: T) -> Self {
        Self { value, ..Self::zero() }
    }

    pub fn zero() -> Self {
        Self { value: T::zero(), grad: [T::zero(); 2], hess: [[T::zero(); 2]; 2] }
    }

    pub fn laplacian(&self) -> T {
        self.hess[0][0] + self.hess[1][1]
    }

    pub fn grad_norm_sqr(&self) -> T {
        self.grad[0] * self.grad[0] + self.grad[1] * self.grad[1]
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = *self;
        r.value = r.value + o.value;
        for i in 0..2 {
            r.grad[i] = r.grad[i] + o.grad[i];
            for j in 0..2 {
                r.hess[i][j] = r.hess[i][j] + o.hess[i][j];
            }
        }
        r
    }

    pub fn scale(&self, s: T) -> Self {
        let mut r = *self;
        r.value = r.value * s;
        for i in 0..2 {
            r.grad[i] = r.grad[i] * s;
            for j in 0..2 {
                r.hess[i][j] = r.hess[i][j] * s;
            }
        }
        r
    }

    /// Jet of `Re f` for a holomorphic `f` given `f`, `f'`, `f''`.
    pub fn real_part(f: Complex<T>, df: Complex<T>, d2f: Complex<T>) -> Self {
        Self {
            value: f.re,
            grad: [df.re, -df.im],
            hess: [[d2f.re, -d2f.im], [-d2f.im, -d2f.re]],
        }
    }

    /// Directional second derivative `uᵀ H v`.
    pub fn hess_uv(&self, u: Complex<T>, v: Complex<T>) -> T {
        u.re * (self.hess[0][0] * v.re + self.hess[0][1] * v.im)
            + u.im * (self.hess[1][0] * v.re + self.hess[1][1] * v.im)
    }

    pub fn grad_dot(&self, u: Complex<T>) -> T {
        self.grad[0] * u.re + self.grad[1] * u.im
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|v| v.is_finite())
            && self.hess.iter().flatten().all(|v| v.is_finite())
    }
}

/// Conformal metric `e^{2φ}|dz|^2`, described by its log-density `φ` against
/// the flat metric with analytic derivatives up to order two.
pub trait MetricOracle<T: Real>: Send + Sync {
    fn jet(&self, p: Complex<T>) -> Jet2<T>;

    fn value(&self, p: Complex<T>) -> T {
        self.jet(p).value
    }

    /// Short human-readable description used in reports.
    fn describe(&self) -> String {
        "custom".into()
    }
}

impl<T: Real, M: MetricOracle<T> + ?Sized> MetricOracle<T> for std::sync::Arc<M> {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        (**self).jet(p)
    }

    fn value(&self, p: Complex<T>) -> T {
        (**self).value(p)
    }

    fn describe(&self) -> String {
        (**self).describe()
    }
}

impl<T: Real, M: MetricOracle<T> + ?Sized> MetricOracle<T> for &M {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        (**self).jet(p)
    }

    fn value(&self, p: Complex<T>) -> T {
        (**self).value(p)
    }

    fn describe(&self) -> String {
        (**self).describe()
    }
}

/// Boundary data of `φ` along one circle at arc length `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryJet<T> {
    pub s: T,
    pub gamma: Complex<T>,
    pub tangent: Complex<T>,
    /// `iγ'`, pointing into the domain.
    pub normal: Complex<T>,
    /// Signed Euclidean curvature with `γ'' = k iγ'`.
    pub curvature: T,
    pub phi: T,
    /// Tangential derivative `dφ/ds`.
    pub dphi: T,
    /// Second tangential derivative `d²φ/ds²` along the curve.
    pub d2phi: T,
    /// Derivative of `φ` along the inward normal `iγ'`.
    pub dn_phi: T,
}

impl<T: Real> BoundaryJet<T> {
    pub fn new<M: MetricOracle<T> + ?Sized>(oracle: &M, circle: &CircleBdry<T>, s: T) -> Self {
        let gamma = circle.point(s);
        let tangent = circle.tangent(s);
        let normal = circle.inward_normal(s);
        let k = circle.curvature();
        let j = oracle.jet(gamma);
        Self {
            s,
            gamma,
            tangent,
            normal,
            curvature: k,
            phi: j.value,
            dphi: j.grad_dot(tangent),
            d2phi: j.hess_uv(tangent, tangent) + k * j.grad_dot(normal),
            dn_phi: j.grad_dot(normal),
        }
    }

    /// A jet with prescribed values, for probing the closed forms directly.
    pub fn synthetic(curvature: T, phi: T, dphi: T, d2phi: T, dn_phi: T) -> Self {
        let one = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        Self {
            s: T::zero(),
            gamma: if curvature != T::zero() { -i / curvature } else { Complex::new(T::zero(), T::zero()) },
            tangent: one,
            normal: i,
            curvature,
            phi,
            dphi,
            d2phi,
            dn_phi,
        }
    }
}

/// Scalar curvature of `e^{2φ} g` where `g = e^{2ψ}|dz|^2` is an optional background.
///
/// Uses `Scal(e^{2φ}g) = e^{-2φ}(Scal(g) - 2Δ_g φ)`, which for a flat background
/// reduces to `-2 e^{-2φ} Δφ`.
pub fn scal_curvature<T: Real>(
    oracle: &dyn MetricOracle<T>,
    p: Complex<T>,
    background: Option<&dyn MetricOracle<T>>,
) -> T {
    let two = lit::<T>(2.0);
    let j = oracle.jet(p);
    match background {
        None => -two * (-two * j.value).exp() * j.laplacian(),
        Some(bg) => {
            let b = bg.jet(p);
            let scal_g = -two * (-two * b.value).exp() * b.laplacian();
            let lap_g = (-two * b.value).exp() * j.laplacian();
            (-two * j.value).exp() * (scal_g - two * lap_g)
        }
    }
}

/// Geodesic curvature of boundary circle `circle` at arc length `s` for `e^{2φ}|dz|^2`.
///
/// The normal derivative is taken along the outward normal, the sign for which
/// the unit circle is a geodesic of the round metric.
pub fn geodesic_curvature<T: Real>(
    domain: &CircleDomain<T>,
    oracle: &dyn MetricOracle<T>,
    circle: usize,
    s: T,
) -> Result<T> {
    let c = domain
        .boundary()
        .get(circle)
        .ok_or_else(|| Error::InvalidInput(format!("no boundary circle {circle}")))?;
    let j = BoundaryJet::new(oracle, c, s);
    Ok((-j.phi).exp() * (j.curvature + outward_derivative(&j)))
}

/// Derivative of `φ` along the outward normal: the calibrated normal convention.
pub fn outward_derivative<T: Real>(j: &BoundaryJet<T>) -> T {
    -j.dn_phi
}

/// Result of comparing an oracle's analytic derivatives against finite differences.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SelfCheckReport {
    pub samples: usize,
    pub max_grad_residual: f64,
    pub max_hess_residual: f64,
    /// Smallest observed order among samples whose residual exceeds the noise floor.
    pub grad_order: Option<f64>,
    pub hess_order: Option<f64>,
    pub pass: bool,
}

/// Centered-difference check of `∇φ` against `φ` and `Hess φ` against `∇φ`.
///
/// Residuals are measured at steps `h` and `h/2`; a sample contributes an
/// observed order only when its residual is above the rounding floor.
pub fn oracle_selfcheck(
    oracle: &dyn MetricOracle<f64>,
    domain: &CircleDomain<f64>,
    n_samples: usize,
) -> Result<SelfCheckReport> {
    let (lo, hi) = domain.bounding_box();
    let scale = (hi.re - lo.re).max(hi.im - lo.im);
    let h = 2e-3 * scale;
    let floor = 1e-9;
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    let mut pts = Vec::new();
    let mut k = 0usize;
    while pts.len() < n_samples && k < 200 * n_samples.max(1) {
        k += 1;
        let u = (k as f64 * golden).fract();
        let v = (k as f64 * 0.7548776662466927).fract();
        let p = Complex::new(lo.re + u * (hi.re - lo.re), lo.im + v * (hi.im - lo.im));
        if domain.contains(p) && domain.boundary_distance(p) > 2.0 * h {
            pts.push(p);
        }
    }
    let mut rep = SelfCheckReport {
        samples: pts.len(),
        max_grad_residual: 0.0,
        max_hess_residual: 0.0,
        grad_order: None,
        hess_order: None,
        pass: true,
    };
    let e = [Complex::new(1.0, 0.0), Complex::new(0.0, 1.0)];
    for &p in &pts {
        let j = oracle.jet(p);
        if !j.is_finite() {
            return Err(Error::EvaluationOutsideDomain { x: p.re, y: p.im });
        }
        let mut res_g = [0.0f64; 2];
        let mut res_h = [0.0f64; 2];
        for (level, step) in [h, 0.5 * h].into_iter().enumerate() {
            for (i, ei) in e.iter().enumerate() {
                let fp = oracle.jet(p + ei * step);
                let fm = oracle.jet(p - ei * step);
                let g = (fp.value - fm.value) / (2.0 * step);
                res_g[level] = res_g[level].max((g - j.grad[i]).abs());
                for jx in 0..2 {
                    let hd = (fp.grad[jx] - fm.grad[jx]) / (2.0 * step);
                    res_h[level] = res_h[level].max((hd - j.hess[jx][i]).abs());
                }
            }
        }
        rep.max_grad_residual = rep.max_grad_residual.max(res_g[1]);
        rep.max_hess_residual = rep.max_hess_residual.max(res_h[1]);
        let gscale = 1.0 + j.grad[0].abs() + j.grad[1].abs();
        let hscale = 1.0 + j.hess.iter().flatten().fold(0.0f64, |a, v| a + v.abs());
        for (res, sc, slot) in [(res_g, gscale, &mut rep.grad_order), (res_h, hscale, &mut rep.hess_order)] {
            if res[0] > floor * sc {
                let order = (res[0] / res[1].max(f64::MIN_POSITIVE)).log2();
                *slot = Some(slot.map_or(order, |o: f64| o.min(order)));
            }
        }
    }
    rep.pass = rep.grad_order.map_or(true, |o| o >= 1.9) && rep.hess_order.map_or(true, |o| o >= 1.9);
    Ok(rep)
}
