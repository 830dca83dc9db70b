use std::f64::consts::TAU;

use num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::curve::JordanCurve;
use crate::error::{Error, Result};

type C = Complex<f64>;

/// Holomorphic map on the closed unit disk given by its Taylor coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformalMap {
    pub coeffs: Vec<C>,
}

impl ConformalMap {
    pub fn identity() -> Self {
        Self { coeffs: vec![C::new(0.0, 0.0), C::new(1.0, 0.0)] }
    }

    /// `[f, f', f'', f''']` at `z`.
    pub fn eval(&self, z: C) -> [C; 4] {
        let zero = C::new(0.0, 0.0);
        let Some((&top, rest)) = self.coeffs.split_last() else {
            return [zero; 4];
        };
        let (mut p, mut d1, mut d2, mut d3) = (top, zero, zero, zero);
        for &a in rest.iter().rev() {
            d3 = d3 * z + d2;
            d2 = d2 * z + d1;
            d1 = d1 * z + p;
            p = p * z + a;
        }
        [p, d1, d2 * 2.0, d3 * 6.0]
    }

    pub fn value(&self, z: C) -> C {
        self.eval(z)[0]
    }

    /// Smallest and largest `|f'|` on a polar grid of the closed unit disk.
    pub fn derivative_range(&self, radii: usize, angles: usize) -> (f64, f64) {
        let mut lo = f64::MAX;
        let mut hi: f64 = 0.0;
        for i in 0..=radii {
            let r = i as f64 / radii as f64;
            for k in 0..angles {
                let d = self.eval(C::from_polar(r, TAU * k as f64 / angles as f64))[1].norm();
                lo = lo.min(d);
                hi = hi.max(d);
            }
        }
        (lo, hi)
    }
}

/// Parameters of the Fourier-conjugation solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UniformizeOptions {
    /// Boundary grid size; `0` picks a power of two from the curve's mode count.
    pub grid: usize,
    /// Sup-norm change of the boundary correspondence that stops the iteration.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Interior base point `f₁(0)`; the curve centroid when absent.
    pub base: Option<[f64; 2]>,
}

impl Default for UniformizeOptions {
    fn default() -> Self {
        Self { grid: 0, tolerance: 1e-10, max_iterations: 500, base: None }
    }
}

/// Convergence record of one Fourier-conjugation solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheodorsenReport {
    pub grid: usize,
    pub iterations: usize,
    /// Sup-norm change of the correspondence at the last iteration.
    pub last_update: f64,
    /// Largest radial gap between the traced boundary and the curve on an offset grid.
    pub boundary_residual: f64,
    /// Relative weight of negative frequencies in the boundary values.
    pub analyticity_residual: f64,
    pub taylor_terms: usize,
}

/// Normalization of the pair: `f₁(0) = base`, `f₁'(0) > 0`, `f₂(∞) = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalization {
    pub base: [f64; 2],
    /// `f₁'(0)`, real and positive.
    pub interior_derivative: f64,
    /// `G'(0)` for the inverted exterior map `G = 1/(f₂(1/w) - base)`, real and positive.
    pub exterior_derivative: f64,
    /// Whether the input curve was clockwise and has been traversed backwards.
    pub reversed: bool,
}

/// Interior map `f₁ = base + F` and exterior map `f₂(z) = base + 1/G(1/z)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformizationPair {
    pub base: C,
    /// `F` with `F(0) = 0`, the interior map minus the base point.
    pub interior: ConformalMap,
    /// `G` with `G(0) = 0`, the exterior map in inversion coordinates.
    pub exterior: ConformalMap,
    pub normalization: Normalization,
    /// Solver records; absent when the maps were supplied directly.
    pub interior_report: Option<TheodorsenReport>,
    pub exterior_report: Option<TheodorsenReport>,
}

impl UniformizationPair {
    /// Pair from explicitly known maps, both fixing the origin.
    pub fn from_maps(base: C, interior: ConformalMap, exterior: ConformalMap) -> Result<Self> {
        for (name, map) in [("interior", &interior), ("exterior", &exterior)] {
            let [f0, d0, ..] = map.eval(C::new(0.0, 0.0));
            if f0.norm() > 1e-12 * (1.0 + d0.norm()) {
                return Err(Error::InvalidInput(format!("{name} map must fix the origin")));
            }
            let (lo, hi) = map.derivative_range(32, 256);
            if !(lo > 1e-8 * hi) {
                return Err(Error::DerivativeVanishes { modulus: lo });
            }
        }
        let normalization = Normalization {
            base: [base.re, base.im],
            interior_derivative: interior.eval(C::new(0.0, 0.0))[1].norm(),
            exterior_derivative: exterior.eval(C::new(0.0, 0.0))[1].norm(),
            reversed: false,
        };
        Ok(Self { base, interior, exterior, normalization, interior_report: None, exterior_report: None })
    }

    pub fn f1(&self, z: C) -> C {
        self.base + self.interior.value(z)
    }

    /// Exterior map at `|z| ≥ 1`.
    pub fn f2(&self, z: C) -> C {
        self.base + self.exterior.value(z.inv()).inv()
    }

    /// The same curve moved by a similarity so that `base = 0` and `F'(0) = 1/G'(0)`.
    ///
    /// Both pulled-back metrics are then as close to the round metric as the
    /// curve allows. Möbius invariance makes the energy frame-independent, while
    /// the upper half-space volume integrals lose accuracy when the Epstein
    /// surfaces approach the ideal boundary, as they do for a distant or badly
    /// scaled curve.
    pub fn normalized(&self) -> Self {
        let zero = C::new(0.0, 0.0);
        let (fd, gd) = (self.interior.eval(zero)[1].norm(), self.exterior.eval(zero)[1].norm());
        let s = (gd / fd).sqrt();
        let scale = |m: &ConformalMap, k: f64| ConformalMap { coeffs: m.coeffs.iter().map(|a| a * k).collect() };
        Self {
            base: zero,
            interior: scale(&self.interior, s),
            exterior: scale(&self.exterior, 1.0 / s),
            normalization: Normalization {
                base: [0.0, 0.0],
                interior_derivative: s * fd,
                exterior_derivative: gd / s,
                reversed: self.normalization.reversed,
            },
            interior_report: self.interior_report,
            exterior_report: self.exterior_report,
        }
    }

    /// Largest boundary residual of the two solves, when they were run.
    pub fn boundary_residual(&self) -> Option<f64> {
        match (&self.interior_report, &self.exterior_report) {
            (Some(a), Some(b)) => Some(a.boundary_residual.max(b.boundary_residual)),
            _ => None,
        }
    }
}

/// Conformal maps onto both complementary components of a starlike curve.
///
/// The interior map comes from Theodorsen's iteration about the base point.
/// The exterior component is inverted through the base point, which turns it
/// into a bounded starlike domain about the origin, and the same iteration
/// produces `G`.
pub fn uniformize(curve: &JordanCurve, options: &UniformizeOptions) -> Result<UniformizationPair> {
    if !(options.tolerance > 0.0) || options.max_iterations == 0 {
        return Err(Error::InvalidInput("tolerance and iteration cap must be positive".into()));
    }
    let reversed = curve.signed_area() < 0.0;
    let curve = if reversed { curve.reversed() } else { curve.clone() };
    let base = options.base.map_or(curve.centroid(), |b| C::new(b[0], b[1]));
    let grid = match options.grid {
        0 => (8 * curve.smoothness().highest_mode + 64).next_power_of_two().max(512),
        g if g >= 16 && g.is_power_of_two() => g,
        g => return Err(Error::InvalidInput(format!("grid must be a power of two ≥ 16, got {g}"))),
    };
    let table = curve.check_resolution().max(4 * grid);
    let interior_boundary = |t: f64| {
        let (z, dz) = curve.eval(t);
        (z - base, dz)
    };
    let exterior_boundary = |t: f64| {
        let (z, dz) = curve.eval(-t);
        let w = (z - base).inv();
        (w, dz * w * w)
    };
    let (interior, interior_report) = theodorsen(&interior_boundary, grid, table, options)?;
    let (exterior, exterior_report) = theodorsen(&exterior_boundary, grid, table, options)?;
    let zero = C::new(0.0, 0.0);
    let normalization = Normalization {
        base: [base.re, base.im],
        interior_derivative: interior.eval(zero)[1].re,
        exterior_derivative: exterior.eval(zero)[1].re,
        reversed,
    };
    Ok(UniformizationPair {
        base,
        interior,
        exterior,
        normalization,
        interior_report: Some(interior_report),
        exterior_report: Some(exterior_report),
    })
}

/// Inverse of the polar angle along a curve starlike about the origin.
struct PolarTable<'a> {
    boundary: &'a dyn Fn(f64) -> (C, C),
    t: Vec<f64>,
    arg: Vec<f64>,
}

impl<'a> PolarTable<'a> {
    fn new(boundary: &'a dyn Fn(f64) -> (C, C), m: usize) -> Result<Self> {
        let not_starlike =
            || Error::NoConvergence("curve is not starlike about the base point; supply the maps directly".into());
        let t: Vec<f64> = (0..=m).map(|k| TAU * k as f64 / m as f64).collect();
        let mut arg = Vec::with_capacity(m + 1);
        for (k, &tk) in t.iter().enumerate() {
            let (z, dz) = boundary(tk);
            if !((dz / z).im > 0.0) {
                return Err(not_starlike());
            }
            let a = z.arg();
            arg.push(match k {
                0 => a,
                _ => {
                    let prev: f64 = arg[k - 1];
                    a + TAU * ((prev - a) / TAU).round()
                }
            });
            if k > 0 && !(arg[k] > arg[k - 1] && arg[k] - arg[k - 1] < std::f64::consts::PI) {
                return Err(not_starlike());
            }
        }
        if (arg[m] - arg[0] - TAU).abs() > 1e-9 {
            return Err(not_starlike());
        }
        Ok(Self { boundary, t, arg })
    }

    /// Boundary point whose argument is `theta` modulo `2π`.
    fn point_at(&self, theta: f64) -> C {
        let a0 = self.arg[0];
        let target = a0 + (theta - a0).rem_euclid(TAU);
        let m = self.t.len() - 1;
        let k = (self.arg.partition_point(|&a| a <= target).max(1) - 1).min(m - 1);
        let (mut lo, mut hi) = (self.t[k], self.t[k + 1]);
        let frac = (target - self.arg[k]) / (self.arg[k + 1] - self.arg[k]);
        let mut t = lo + frac * (hi - lo);
        let mut z = (self.boundary)(t).0;
        for _ in 0..40 {
            let (zt, dz) = (self.boundary)(t);
            z = zt;
            let mut a = z.arg();
            a += TAU * ((target - a) / TAU).round();
            let f = a - target;
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = f / (dz / z).im;
            let next = t - step;
            let next = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
            if (next - t).abs() < 1e-16 * TAU {
                break;
            }
            t = next;
        }
        z
    }
}

/// Harmonic conjugate on an equispaced periodic grid, zero mean, Nyquist mode dropped.
fn conjugate(values: &[f64], planner: &mut FftPlanner<f64>) -> Vec<f64> {
    let n = values.len();
    let mut buf: Vec<C> = values.iter().map(|&v| C::new(v, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        *c = if k == 0 || 2 * k == n {
            C::new(0.0, 0.0)
        } else if 2 * k < n {
            *c * C::new(0.0, -1.0)
        } else {
            *c * C::new(0.0, 1.0)
        };
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|c| c.re / n as f64).collect()
}

/// Interior map of a curve starlike about the origin with `F(0) = 0`, `F'(0) > 0`.
///
/// Unknown is the boundary correspondence `θ ↦ θ + Φ(θ)`: `F(e^{iθ})` is the curve
/// point at polar angle `θ + Φ(θ)`, and `Φ` is the harmonic conjugate of `log|F|`.
fn theodorsen(
    boundary: &dyn Fn(f64) -> (C, C),
    n: usize,
    table: usize,
    options: &UniformizeOptions,
) -> Result<(ConformalMap, TheodorsenReport)> {
    let polar = PolarTable::new(boundary, table)?;
    let mut planner = FftPlanner::new();
    let theta: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
    let mut phi = vec![0.0; n];
    let mut last_update = f64::INFINITY;
    let mut iterations = 0;
    let mut growth = 0;
    while last_update >= options.tolerance {
        if iterations == options.max_iterations {
            return Err(Error::NoConvergence(format!(
                "boundary correspondence still changes by {last_update:.3e} after {iterations} iterations"
            )));
        }
        iterations += 1;
        let log_r: Vec<f64> = theta.iter().zip(&phi).map(|(t, p)| polar.point_at(t + p).norm().ln()).collect();
        let next = conjugate(&log_r, &mut planner);
        let update = next.iter().zip(&phi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if !update.is_finite() {
            return Err(Error::NoConvergence("boundary correspondence became non-finite".into()));
        }
        growth = if update > last_update { growth + 1 } else { 0 };
        if growth >= 10 {
            return Err(Error::NoConvergence(format!("iteration diverges (update {update:.3e})")));
        }
        last_update = update;
        phi = next;
    }
    let mut values: Vec<C> = theta.iter().zip(&phi).map(|(t, p)| polar.point_at(t + p)).collect();
    planner.plan_fft_forward(n).process(&mut values);
    let total: f64 = values.iter().map(|c| c.norm_sqr()).sum();
    let negative: f64 = values[n / 2..].iter().map(|c| c.norm_sqr()).sum();
    let mut coeffs: Vec<C> = values[..n / 2].iter().map(|c| c / n as f64).collect();
    let lead = coeffs[1].norm();
    while coeffs.len() > 2 && coeffs.last().is_some_and(|c| c.norm() < 1e-15 * lead) {
        coeffs.pop();
    }
    let map = ConformalMap { coeffs };
    let check = 4 * n;
    let mut boundary_residual: f64 = 0.0;
    for k in 0..check {
        let w = map.value(C::from_polar(1.0, TAU * (k as f64 + 0.5) / check as f64));
        let z = polar.point_at(w.arg());
        boundary_residual = boundary_residual.max((w.norm() - z.norm()).abs());
    }
    let report = TheodorsenReport {
        grid: n,
        iterations,
        last_update,
        boundary_residual,
        analyticity_residual: (negative / total).sqrt(),
        taylor_terms: map.coeffs.len(),
    };
    Ok((map, report))
}
