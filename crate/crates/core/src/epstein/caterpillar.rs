use num_complex::Complex;

use super::frame::Frame;
use super::sample::EpsteinSample;
use crate::error::{Error, Result};
use crate::hyp3::{GeodesicPlane, PointUHS};
use crate::metric::BoundaryJet;
use crate::scalar::{lit, Real};
use crate::vec3::V3;

fn horizontal<T: Real>(v: Complex<T>) -> V3<T> {
    [v.re, v.im, T::zero()]
}

/// Caterpillar (curve Epstein) map at leaf parameter `t`:
/// `(γ + (2φ'γ' + 2t iγ')/D, 2e^φ/D)` with `D = e^{2φ} + φ'^2 + t^2`.
pub fn caterpillar<T: Real>(jet: &BoundaryJet<T>, t: T) -> PointUHS<T> {
    PointUHS::from_array(caterpillar_point(jet, t))
}

pub fn caterpillar_point<T: Real>(jet: &BoundaryJet<T>, t: T) -> V3<T> {
    let two = lit::<T>(2.0);
    let e = jet.phi.exp();
    let d = e * e + jet.dphi * jet.dphi + t * t;
    let h = jet.gamma + (jet.tangent * (two * jet.dphi) + jet.normal * (two * t)) / d;
    [h.re, h.im, two * e / d]
}

/// Hyperbolic unit normal of the caterpillar, `z·Y`.
pub fn caterpillar_normal<T: Real>(jet: &BoundaryJet<T>, t: T) -> V3<T> {
    let e = jet.phi.exp();
    let e2 = e * e;
    let q = jet.dphi * jet.dphi + t * t;
    let d = e2 + q;
    let h = (jet.tangent * jet.dphi + jet.normal * t) * (lit::<T>(4.0) * e2 / (d * d));
    [h.re, h.im, lit::<T>(2.0) * e * (e2 - q) / (d * d)]
}

/// Analytic frame of the caterpillar in coordinates `(u, v) = (s, t)`.
pub fn caterpillar_frame<T: Real>(jet: &BoundaryJet<T>, t: T) -> Frame<T> {
    let (two, four, eight) = (lit::<T>(2.0), lit::<T>(4.0), lit::<T>(8.0));
    let e = jet.phi.exp();
    let e2 = e * e;
    let (p1, p2, k) = (jet.dphi, jet.d2phi, jet.curvature);
    let (tg, nu) = (jet.tangent, jet.normal);
    let q = p1 * p1 + t * t;
    let d = e2 + q;
    let (d2, d3) = (d * d, d * d * d);
    let ds = two * e2 * p1 + two * p1 * p2;
    let a = tg * p1 + nu * t;
    // Derivative of a = φ'T + tν along s at fixed t.
    let a_s = tg * p2 + nu * (p1 * k) - tg * (t * k);

    let xt = horizontal(nu * (two / d) - a * (four * t / d2));
    let xt = [xt[0], xt[1], -four * e * t / d2];
    let xs_h = tg + a_s * (two / d) - a * (two * ds / d2);
    let xs = [xs_h.re, xs_h.im, two * e * p1 / d - two * e * ds / d2];

    let nt_h = nu * (four * e2 / d2) - a * (lit::<T>(16.0) * e2 * t / d3);
    let nt = [nt_h.re, nt_h.im, -four * e * t / d2 - eight * e * t * (e2 - q) / d3];
    let ns_h = a * (eight * e2 * p1 / d2) + a_s * (four * e2 / d2) - a * (eight * e2 * ds / d3);
    let ns = [
        ns_h.re,
        ns_h.im,
        two * e * p1 * (e2 - q) / d2 + two * e * (two * e2 * p1 - two * p1 * p2) / d2
            - four * e * (e2 - q) * ds / d3,
    ];
    Frame { x: caterpillar_point(jet, t), n: caterpillar_normal(jet, t), xu: xs, xv: xt, nu: ns, nv: nt }
}

/// The quantity `e^{2φ} + t(t - 2k) - φ'^2 + 2φ''` whose zeros are the critical
/// points of the caterpillar map.
pub fn caterpillar_denominator<T: Real>(jet: &BoundaryJet<T>, t: T) -> T {
    let two = lit::<T>(2.0);
    (two * jet.phi).exp() + t * (t - two * jet.curvature) - jet.dphi * jet.dphi + two * jet.d2phi
}

/// Closed-form shape data of the caterpillar in `(t, s)` order of the forms:
/// `I_TT = e^{-2φ}`, `I_TS = (k-t)φ'e^{-2φ}`, `II_TT = -e^{-2φ}`, `k₁ = -1`.
///
/// The first and second forms are returned in `(s, t)` coordinate order to match
/// [`caterpillar_frame`].
pub fn caterpillar_shape<T: Real>(jet: &BoundaryJet<T>, t: T) -> Result<EpsteinSample<T>> {
    let (two, four) = (lit::<T>(2.0), lit::<T>(4.0));
    let em2 = (-two * jet.phi).exp();
    let e2 = (two * jet.phi).exp();
    let (p1, p2, k) = (jet.dphi, jet.d2phi, jet.curvature);
    let den = caterpillar_denominator(jet, t);
    let i_tt = em2;
    let i_ts = (k - t) * p1 * em2;
    let i_ss = em2 / four * (four * p1 * p1 * (k - t) * (k - t) + den * den);
    let ii_tt = -em2;
    let ii_ts = em2 * (t - k) * p1;
    let p1sq = p1 * p1;
    let ii_ss = em2 / four
        * (e2 * e2 - four * k * k * t * t + four * k * t * t * t - t * t * t * t - p1sq * p1sq
            - two * p1sq * (two * k * k - two * k * t + t * t - two * p2)
            + four * (two * k - t) * t * p2
            - four * p2 * p2);
    let numer = -(t * (t - two * k) - p1sq + two * p2);
    let area_density = em2 / two * (-den);
    let orientation = if -den >= T::zero() { T::one() } else { -T::one() };
    let h_density = -em2 / two * numer;
    let tol = T::default_tol() * (T::one() + e2);
    if den.abs() <= tol {
        return Err(Error::DenominatorVanishes { h_density: h_density.to_f64().unwrap_or(f64::NAN) });
    }
    let h = numer / den;
    let k2 = (e2 - t * (t - two * k) + p1sq - two * p2) / den;
    Ok(EpsteinSample {
        position: caterpillar(jet, t),
        normal: caterpillar_normal(jet, t),
        first_form: [[i_ss, i_ts], [i_ts, i_tt]],
        second_form: [[ii_ss, ii_ts], [ii_ts, ii_tt]],
        mean_curvature: Some(h),
        principal: Some([-T::one(), k2]),
        area_density,
        orientation,
        h_density,
    })
}

/// Leaf parameter where the caterpillar is tangent to the domain Epstein surface:
/// the derivative of `φ` along the inward normal.
pub fn t_start<T: Real>(jet: &BoundaryJet<T>) -> T {
    jet.dn_phi
}

/// Leaf parameter where the caterpillar reaches the geodesic plane over its circle,
/// by a bracketed bisection on the signed Lorentzian distance to the plane.
pub fn t_land<T: Real>(jet: &BoundaryJet<T>, plane: &GeodesicPlane<T>) -> Result<T> {
    let f = |t: T| plane.signed_value(&caterpillar(jet, t));
    let t0 = t_start(jet);
    let scale = T::one() + jet.curvature.abs() + t0.abs() + jet.dphi.abs() + jet.phi.exp();
    let f0 = f(t0);
    if f0 == T::zero() {
        return Ok(t0);
    }
    let mut width = scale * lit(1e-3);
    let limit = scale * lit(1e4);
    let mut bracket = None;
    while width <= limit {
        for &b in &[t0 + width, t0 - width] {
            if f(b) * f0 <= T::zero() {
                bracket = Some(b);
                break;
            }
        }
        if bracket.is_some() {
            break;
        }
        width = width * lit(2.0);
    }
    let b = bracket.ok_or(Error::NoLanding)?;
    let (mut lo, mut hi) = if b > t0 { (t0, b) } else { (b, t0) };
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = (lo + hi) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / lit(2.0))
}
