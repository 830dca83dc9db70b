use num_complex::Complex;
use rayon::prelude::*;

use super::rules::{gauss_legendre_on, pairwise_sum, periodic_trapezoid};
use super::spec::QuadratureSpec;
use crate::error::{Error, Result};
use crate::hyp3::{CircleBdry, Side};
use crate::metric::CircleDomain;

/// Integral value with an error estimate from the previous refinement level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Evaluates `f` at every node in parallel, then sums the weighted values pairwise
/// in node order so the result does not depend on the thread count.
pub fn weighted_sum<P: Sync, F>(nodes: &[(P, f64)], f: F) -> f64
where
    F: Fn(&P) -> f64 + Sync,
{
    let vals: Vec<f64> = nodes.par_iter().map(|(p, w)| if *w == 0.0 { 0.0 } else { w * f(p) }).collect();
    pairwise_sum(&vals)
}

/// Same as [`weighted_sum`] for integrands returning several components.
pub fn weighted_sum_n<P: Sync, F, const N: usize>(nodes: &[(P, f64)], f: F) -> [f64; N]
where
    F: Fn(&P) -> [f64; N] + Sync,
{
    let vals: Vec<[f64; N]> = nodes
        .par_iter()
        .map(|(p, w)| {
            if *w == 0.0 {
                [0.0; N]
            } else {
                let v = f(p);
                std::array::from_fn(|i| w * v[i])
            }
        })
        .collect();
    std::array::from_fn(|i| {
        let col: Vec<f64> = vals.iter().map(|v| v[i]).collect();
        pairwise_sum(&col)
    })
}

/// Arc-length integral of a periodic function over a circle by the trapezoid rule.
///
/// `f` receives the arc length `s` in `[0, 2πr)` in the circle's own parametrization.
pub fn integrate_boundary<F>(f: F, circle: &CircleBdry<f64>, n: usize) -> Estimate
where
    F: Fn(f64) -> f64 + Sync,
{
    let fine = periodic_trapezoid(n, circle.length());
    let value = weighted_sum(&fine, |s| f(*s));
    let coarse = periodic_trapezoid((n / 2).max(1), circle.length());
    let prev = weighted_sum(&coarse, |s| f(*s));
    Estimate { value, error: (value - prev).abs() }
}

/// Smooth step equal to 0 for `u <= 0` and 1 for `u >= 1`, flat to all orders at both ends.
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / u).exp();
        let b = (-1.0 / (1.0 - u)).exp();
        a / (a + b)
    }
}

/// Quadrature nodes and weights covering a circle domain.
///
/// A disk is covered by one polar patch. A multiply connected domain is split by a
/// smooth partition of unity: polar collars of width `min_gap/3` hug every boundary
/// circle, and the remaining interior is integrated on a cell-centred Cartesian grid
/// whose weights vanish to all orders where the collars take over.
#[derive(Debug, Clone)]
pub struct DomainRule {
    pub nodes: Vec<(Complex<f64>, f64)>,
    pub collar_width: Option<f64>,
}

impl DomainRule {
    pub fn new(domain: &CircleDomain<f64>, spec: &QuadratureSpec) -> Result<Self> {
        let outer = *domain.outer();
        if domain.holes().is_empty() {
            let nodes = polar_patch(&outer, 0.0, outer.radius, spec, |_| 1.0);
            return Ok(Self { nodes, collar_width: None });
        }
        let w = domain.min_gap() / 3.0;
        let h = 2.0 * outer.radius / spec.cartesian as f64;
        if w < 8.0 * h {
            return Err(Error::PatchingFailure(format!(
                "collar width {w:.3e} is below eight grid cells ({:.3e}); raise the cartesian resolution",
                8.0 * h
            )));
        }
        let chi = collar_weights(domain, w);
        let mut nodes = polar_patch(&outer, outer.radius - w, outer.radius, spec, |rho| {
            smooth_step((rho - (outer.radius - w)) / w)
        });
        for hole in domain.holes() {
            nodes.extend(polar_patch(hole, hole.radius, hole.radius + w, spec, |rho| {
                smooth_step((hole.radius + w - rho) / w)
            }));
        }
        let (lo, _) = domain.bounding_box();
        let n = spec.cartesian;
        for i in 0..n {
            for j in 0..n {
                let p = Complex::new(lo.re + (i as f64 + 0.5) * h, lo.im + (j as f64 + 0.5) * h);
                if !domain.contains(p) {
                    continue;
                }
                let wt = 1.0 - chi(p);
                if wt > 0.0 {
                    nodes.push((p, wt * h * h));
                }
            }
        }
        Ok(Self { nodes, collar_width: Some(w) })
    }

    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(Complex<f64>) -> f64 + Sync,
    {
        weighted_sum(&self.nodes, |p| f(*p))
    }

    pub fn integrate_n<F, const N: usize>(&self, f: F) -> [f64; N]
    where
        F: Fn(Complex<f64>) -> [f64; N] + Sync,
    {
        weighted_sum_n(&self.nodes, |p| f(*p))
    }
}

fn collar_weights(domain: &CircleDomain<f64>, w: f64) -> impl Fn(Complex<f64>) -> f64 + '_ {
    move |p| {
        domain
            .boundary()
            .iter()
            .map(|c| {
                let rho = (p - c.center).norm();
                match c.orientation {
                    Side::Inside => smooth_step((rho - (c.radius - w)) / w),
                    Side::Outside => smooth_step((c.radius + w - rho) / w),
                }
            })
            .sum()
    }
}

/// Polar tensor rule on the annulus `r0 < |z - c| < r1` with an extra radial weight.
fn polar_patch<W: Fn(f64) -> f64>(
    circle: &CircleBdry<f64>,
    r0: f64,
    r1: f64,
    spec: &QuadratureSpec,
    weight: W,
) -> Vec<(Complex<f64>, f64)> {
    let radial = gauss_legendre_on(spec.radial, r0, r1);
    let angular = periodic_trapezoid(spec.angular, 2.0 * std::f64::consts::PI);
    let mut out = Vec::with_capacity(radial.len() * angular.len());
    for &(rho, wr) in &radial {
        let wrho = wr * rho * weight(rho);
        for &(th, wt) in &angular {
            out.push((circle.center + Complex::from_polar(rho, th), wrho * wt));
        }
    }
    out
}

/// Integral of `f` over a circle domain.
pub fn integrate_domain<F>(f: F, domain: &CircleDomain<f64>, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(Complex<f64>) -> f64 + Sync,
{
    Ok(DomainRule::new(domain, spec)?.integrate(f))
}

/// Tensor-product rule on a parameter rectangle.
#[derive(Debug, Clone)]
pub struct TensorRule {
    pub u: Vec<(f64, f64)>,
    pub v: Vec<(f64, f64)>,
}

impl TensorRule {
    pub fn gauss(nu: usize, u: (f64, f64), nv: usize, v: (f64, f64)) -> Self {
        Self { u: gauss_legendre_on(nu, u.0, u.1), v: gauss_legendre_on(nv, v.0, v.1) }
    }

    /// Periodic trapezoid in `u`, Gauss–Legendre in `v`.
    pub fn periodic_gauss(nu: usize, period: f64, nv: usize, v: (f64, f64)) -> Self {
        Self { u: periodic_trapezoid(nu, period), v: gauss_legendre_on(nv, v.0, v.1) }
    }

    pub fn nodes(&self) -> Vec<((f64, f64), f64)> {
        let mut out = Vec::with_capacity(self.u.len() * self.v.len());
        for &(u, wu) in &self.u {
            for &(v, wv) in &self.v {
                out.push(((u, v), wu * wv));
            }
        }
        out
    }
}

/// Integral of a 2-form over a parametrized surface patch.
///
/// `immersion` returns the point and both coordinate derivatives; `form`
/// evaluates the 2-form on them. `orientation` is `±1` relative to `(u, v)`.
pub fn integrate_surface<X, F>(immersion: X, form: F, rule: &TensorRule, orientation: f64) -> f64
where
    X: Fn(f64, f64) -> ([f64; 3], [f64; 3], [f64; 3]) + Sync,
    F: Fn(&[f64; 3], &[f64; 3], &[f64; 3]) -> f64 + Sync,
{
    let nodes = rule.nodes();
    orientation
        * weighted_sum(&nodes, |&(u, v)| {
            let (x, xu, xv) = immersion(u, v);
            form(&x, &xu, &xv)
        })
}

/// Hyperbolic area 2-form `|X_u × X_v| / z^2` of the upper half-space.
pub fn hyperbolic_area_form(x: &[f64; 3], xu: &[f64; 3], xv: &[f64; 3]) -> f64 {
    let c = [
        xu[1] * xv[2] - xu[2] * xv[1],
        xu[2] * xv[0] - xu[0] * xv[2],
        xu[0] * xv[1] - xu[1] * xv[0],
    ];
    (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt() / (x[2] * x[2])
}

/// Derivative estimate from Richardson-extrapolated central differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error: f64,
    /// Observed order of the plain central difference over `h, h/2, h/4`.
    pub order: Option<f64>,
}

/// First or second derivative of `f` at `x` with initial step `h`.
pub fn differentiate<F: Fn(f64) -> f64>(f: F, x: f64, order: usize, h: f64) -> Result<Derivative> {
    if !(h > 4.0 * f64::EPSILON * x.abs().max(1.0)) {
        return Err(Error::StepUnderflow { h });
    }
    let central = |h: f64| match order {
        1 => Ok((f(x + h) - f(x - h)) / (2.0 * h)),
        2 => Ok((f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)),
        _ => Err(Error::InvalidInput(format!("derivative order {order} is not supported"))),
    };
    let d1 = central(h)?;
    let d2 = central(0.5 * h)?;
    let d4 = central(0.25 * h)?;
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    let value = (16.0 * r2 - r1) / 15.0;
    let (a, b) = ((d1 - d2).abs(), (d2 - d4).abs());
    let noise = 1e3 * f64::EPSILON * (d4.abs() + 1.0) / h.powi(order as i32 - 1).max(1e-300);
    let order = if a > noise && b > 0.0 { Some((a / b).log2()) } else { None };
    Ok(Derivative { value, error: (value - r2).abs(), order })
}
