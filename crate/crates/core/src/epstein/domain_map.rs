use num_complex::Complex;

use super::frame::Frame;
use super::sample::EpsteinSample;
use crate::error::Result;
use crate::hyp3::PointUHS;
use crate::metric::{Jet2, MetricOracle};
use crate::scalar::{lit, Real};
use crate::vec3::V3;

/// Epstein map of the domain: `(p + 2∇φ/D, 2e^φ/D)` with `D = e^{2φ} + |∇φ|^2`.
pub fn domain_epstein<T: Real, M: MetricOracle<T> + ?Sized>(oracle: &M, p: Complex<T>) -> PointUHS<T> {
    PointUHS::from_array(epstein_point(p, &oracle.jet(p)))
}

/// Hyperbolic unit normal of the tangent horosphere at `Eps(p)`, pointing away from its
/// basepoint `p`.
pub fn domain_epstein_gauss<T: Real, M: MetricOracle<T> + ?Sized>(oracle: &M, p: Complex<T>) -> V3<T> {
    epstein_normal(&oracle.jet(p))
}

pub fn epstein_point<T: Real>(p: Complex<T>, j: &Jet2<T>) -> V3<T> {
    let two = lit::<T>(2.0);
    let e = j.value.exp();
    let d = e * e + j.grad_norm_sqr();
    [p.re + two * j.grad[0] / d, p.im + two * j.grad[1] / d, two * e / d]
}

pub fn epstein_normal<T: Real>(j: &Jet2<T>) -> V3<T> {
    let e = j.value.exp();
    let e2 = e * e;
    let g2 = j.grad_norm_sqr();
    let d = e2 + g2;
    let four = lit::<T>(4.0);
    [four * e2 * j.grad[0] / (d * d), four * e2 * j.grad[1] / (d * d), lit::<T>(2.0) * e * (e2 - g2) / (d * d)]
}

/// Analytic frame of the domain Epstein map in Cartesian coordinates `(x, y)`.
pub fn domain_frame<T: Real>(p: Complex<T>, j: &Jet2<T>) -> Frame<T> {
    let (two, four, eight) = (lit::<T>(2.0), lit::<T>(4.0), lit::<T>(8.0));
    let e = j.value.exp();
    let e2 = e * e;
    let g = j.grad;
    let h = j.hess;
    let g2 = j.grad_norm_sqr();
    let d = e2 + g2;
    let (d2, d3) = (d * d, d * d * d);
    let mut dx = [[T::zero(); 3]; 2];
    let mut dn = [[T::zero(); 3]; 2];
    for jj in 0..2 {
        let gh = g[0] * h[0][jj] + g[1] * h[1][jj];
        let dd = two * e2 * g[jj] + two * gh;
        for hh in 0..2 {
            let delta = if hh == jj { T::one() } else { T::zero() };
            dx[jj][hh] = delta + two * h[hh][jj] / d - two * g[hh] * dd / d2;
            dn[jj][hh] = four * (two * e2 * g[jj] * g[hh] + e2 * h[hh][jj]) / d2 - eight * e2 * g[hh] * dd / d3;
        }
        dx[jj][2] = two * e * g[jj] / d - two * e * dd / d2;
        dn[jj][2] = (two * e * g[jj] * (e2 - g2) + two * e * (two * e2 * g[jj] - two * gh)) / d2
            - four * e * (e2 - g2) * dd / d3;
    }
    Frame { x: epstein_point(p, j), n: epstein_normal(j), xu: dx[0], xv: dx[1], nu: dn[0], nv: dn[1] }
}

/// Shape data of the domain Epstein surface at `p` from Richardson-extrapolated
/// central differences of the immersion and its Gauss map with step `step`.
pub fn domain_epstein_shape<M: MetricOracle<f64> + ?Sized>(
    oracle: &M,
    p: Complex<f64>,
    step: f64,
) -> Result<EpsteinSample<f64>> {
    let x = |q: Complex<f64>| epstein_point(q, &oracle.jet(q));
    let n = |q: Complex<f64>| epstein_normal(&oracle.jet(q));
    let diff = |f: &dyn Fn(Complex<f64>) -> V3<f64>, dir: Complex<f64>| -> V3<f64> {
        let c = |h: f64| {
            let a = f(p + dir * h);
            let b = f(p - dir * h);
            [(a[0] - b[0]) / (2.0 * h), (a[1] - b[1]) / (2.0 * h), (a[2] - b[2]) / (2.0 * h)]
        };
        let (c1, c2) = (c(step), c(0.5 * step));
        [0, 1, 2].map(|i| (4.0 * c2[i] - c1[i]) / 3.0)
    };
    let ex = Complex::new(1.0, 0.0);
    let ey = Complex::new(0.0, 1.0);
    let frame = Frame {
        x: x(p),
        n: n(p),
        xu: diff(&x, ex),
        xv: diff(&x, ey),
        nu: diff(&n, ex),
        nv: diff(&n, ey),
    };
    EpsteinSample::from_frame(&frame, 1e-12)
}
