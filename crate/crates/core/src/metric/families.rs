use std::sync::Arc;

use num_complex::Complex;

use super::oracle::{Jet2, MetricOracle};
use crate::hyp3::Isometry;
use crate::scalar::{lit, Real};

/// Constant factor `φ ≡ c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flat<T> {
    pub c: T,
}

impl<T: Real> MetricOracle<T> for Flat<T> {
    fn jet(&self, _p: Complex<T>) -> Jet2<T> {
        Jet2::constant(self.c)
    }

    fn describe(&self) -> String {
        format!("flat(c = {:?})", self.c)
    }
}

/// Round sphere `φ = log(2/(1+|z|^2))`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RoundSphere;

impl<T: Real> MetricOracle<T> for RoundSphere {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        let two = lit::<T>(2.0);
        let four = lit::<T>(4.0);
        let q = T::one() + p.norm_sqr();
        let (x, y) = (p.re, p.im);
        Jet2 {
            value: two.ln() - q.ln(),
            grad: [-two * x / q, -two * y / q],
            hess: [
                [-two / q + four * x * x / (q * q), four * x * y / (q * q)],
                [four * x * y / (q * q), -two / q + four * y * y / (q * q)],
            ],
        }
    }

    fn describe(&self) -> String {
        "round_sphere".into()
    }
}

/// Hyperbolic disk `φ = log(2/(1-|z|^2))`, defined for `|z| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HyperbolicDisk;

impl<T: Real> MetricOracle<T> for HyperbolicDisk {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        let two = lit::<T>(2.0);
        let four = lit::<T>(4.0);
        let q = T::one() - p.norm_sqr();
        let (x, y) = (p.re, p.im);
        Jet2 {
            value: two.ln() - q.ln(),
            grad: [two * x / q, two * y / q],
            hess: [
                [two / q + four * x * x / (q * q), four * x * y / (q * q)],
                [four * x * y / (q * q), two / q + four * y * y / (q * q)],
            ],
        }
    }

    fn describe(&self) -> String {
        "hyperbolic_disk".into()
    }
}

/// Harmonic perturbation `φ = ε Σ_n Re(a_n z^n)`, `n = 0, 1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierBump<T> {
    pub eps: T,
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Real> MetricOracle<T> for FourierBump<T> {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        let zero = Complex::new(T::zero(), T::zero());
        // Horner evaluation of the polynomial and its first two derivatives.
        let (mut f, mut df, mut d2f) = (zero, zero, zero);
        for a in self.coeffs.iter().rev() {
            d2f = d2f * p + df * lit::<T>(2.0);
            df = df * p + f;
            f = f * p + a;
        }
        Jet2::real_part(f, df, d2f).scale(self.eps)
    }

    fn describe(&self) -> String {
        format!("fourier_bump(eps = {:?}, {} coefficients)", self.eps, self.coeffs.len())
    }
}

/// Gaussian bump `A exp(-|z-c|^2 / (2 w^2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBump<T> {
    pub amplitude: T,
    pub center: Complex<T>,
    pub width: T,
}

impl<T: Real> MetricOracle<T> for GaussianBump<T> {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        let d = p - self.center;
        let w2 = self.width * self.width;
        let f = self.amplitude * (-d.norm_sqr() / (lit::<T>(2.0) * w2)).exp();
        let g = [-d.re / w2, -d.im / w2];
        let dd = [d.re, d.im];
        let mut hess = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { T::one() } else { T::zero() };
                hess[i][j] = f * (dd[i] * dd[j] / (w2 * w2) - delta / w2);
            }
        }
        Jet2 { value: f, grad: [f * g[0], f * g[1]], hess }
    }

    fn describe(&self) -> String {
        format!("gaussian_bump(A = {:?}, w = {:?})", self.amplitude, self.width)
    }
}

/// Smooth bump with compact support in the disk `|z-c| < R`:
/// `A exp(1 - 1/(1 - |z-c|^2/R^2))`, equal to `A` at the center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompactBump<T> {
    pub amplitude: T,
    pub center: Complex<T>,
    pub radius: T,
}

impl<T: Real> MetricOracle<T> for CompactBump<T> {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        let d = p - self.center;
        let r2 = self.radius * self.radius;
        let u = T::one() - d.norm_sqr() / r2;
        if u <= T::zero() {
            return Jet2::zero();
        }
        let two = lit::<T>(2.0);
        let f = self.amplitude * (T::one() - T::one() / u).exp();
        let du = [-two * d.re / r2, -two * d.im / r2];
        let gl = [du[0] / (u * u), du[1] / (u * u)];
        let mut hess = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let hu = if i == j { -two / r2 } else { T::zero() };
                let hl = hu / (u * u) - two * du[i] * du[j] / (u * u * u);
                hess[i][j] = f * (hl + gl[i] * gl[j]);
            }
        }
        Jet2 { value: f, grad: [f * gl[0], f * gl[1]], hess }
    }

    fn describe(&self) -> String {
        format!("compact_bump(A = {:?}, R = {:?})", self.amplitude, self.radius)
    }
}

/// Radial quadratic `ε (1 - |z|^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialQuadratic<T> {
    pub eps: T,
}

impl<T: Real> MetricOracle<T> for RadialQuadratic<T> {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        let two = lit::<T>(2.0);
        Jet2 {
            value: self.eps * (T::one() - p.norm_sqr()),
            grad: [-two * self.eps * p.re, -two * self.eps * p.im],
            hess: [[-two * self.eps, T::zero()], [T::zero(), -two * self.eps]],
        }
    }

    fn describe(&self) -> String {
        format!("radial_quadratic(eps = {:?})", self.eps)
    }
}

/// Sum of log-densities, i.e. the product of the conformal factors.
#[derive(Clone)]
pub struct SumMetric<T> {
    pub terms: Vec<Arc<dyn MetricOracle<T>>>,
}

impl<T: Real> MetricOracle<T> for SumMetric<T> {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        self.terms.iter().fold(Jet2::zero(), |acc, t| acc.add(&t.jet(p)))
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| t.describe()).collect();
        parts.join(" + ")
    }
}

/// `s φ` for a fixed real `s`.
#[derive(Clone)]
pub struct ScaledMetric<T> {
    pub factor: T,
    pub inner: Arc<dyn MetricOracle<T>>,
}

impl<T: Real> MetricOracle<T> for ScaledMetric<T> {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        self.inner.jet(p).scale(self.factor)
    }

    fn describe(&self) -> String {
        format!("{:?} * ({})", self.factor, self.inner.describe())
    }
}

/// Pullback of `e^{2φ}|dz|^2` by a Möbius map `ω`: `ψ = φ∘ω + log|ω'|`.
#[derive(Clone)]
pub struct MobiusPullback<T> {
    pub map: Isometry<T>,
    pub inner: Arc<dyn MetricOracle<T>>,
}

impl<T: Real> MobiusPullback<T> {
    pub fn new(map: Isometry<T>, inner: Arc<dyn MetricOracle<T>>) -> Self {
        Self { map, inner }
    }
}

impl<T: Real> MetricOracle<T> for MobiusPullback<T> {
    fn jet(&self, p: Complex<T>) -> Jet2<T> {
        let two = Complex::new(lit::<T>(2.0), T::zero());
        let m = &self.map;
        let w = m.c * p + m.d;
        let winv = w.inv();
        let omega = m.apply_boundary(p);
        let d1 = winv * winv;
        let d2 = -two * m.c * d1 * winv;
        // log ω' = -2 log(cz + d).
        let lg = Jet2::real_part(-two * w.ln(), -two * m.c * winv, two * m.c * m.c * d1);
        let inner = self.inner.jet(omega);
        // Real Jacobian of ω: [[α, -β], [β, α]] with ω' = α + iβ.
        let jac = [[d1.re, -d1.im], [d1.im, d1.re]];
        let mut grad = [T::zero(); 2];
        for i in 0..2 {
            grad[i] = jac[0][i] * inner.grad[0] + jac[1][i] * inner.grad[1];
        }
        let hre = [[d2.re, -d2.im], [-d2.im, -d2.re]];
        let him = [[d2.im, d2.re], [d2.re, -d2.im]];
        let mut hess = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = inner.grad[0] * hre[i][j] + inner.grad[1] * him[i][j];
                for k in 0..2 {
                    for l in 0..2 {
                        acc = acc + jac[k][i] * inner.hess[k][l] * jac[l][j];
                    }
                }
                hess[i][j] = acc;
            }
        }
        Jet2 { value: inner.value, grad, hess }.add(&lg)
    }

    fn describe(&self) -> String {
        format!("mobius_pullback({})", self.inner.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{oracle_selfcheck, CircleDomain};

    fn check(m: &dyn MetricOracle<f64>) {
        let rep = oracle_selfcheck(m, &CircleDomain::unit_disk(), 40).unwrap();
        assert!(rep.pass, "{} failed self-check: {rep:?}", m.describe());
    }

    #[test]
    fn families_pass_selfcheck() {
        check(&Flat { c: 0.3 });
        check(&RoundSphere);
        check(&FourierBump { eps: 0.3, coeffs: vec![Complex::new(0.1, 0.0), Complex::new(0.5, -0.2), Complex::new(0.3, 0.4)] });
        check(&GaussianBump { amplitude: 0.4, center: Complex::new(0.2, -0.1), width: 0.3 });
        check(&CompactBump { amplitude: 0.4, center: Complex::new(0.1, 0.1), radius: 0.6 });
        check(&RadialQuadratic { eps: 0.2 });
        let map = Isometry::new(
            Complex::new(1.0, 0.2),
            Complex::new(0.3, 0.0),
            Complex::new(0.2, -0.1),
            Complex::new(1.0, 0.0),
        )
        .unwrap();
        check(&MobiusPullback::new(map, Arc::new(GaussianBump { amplitude: 0.4, center: Complex::new(0.2, -0.1), width: 0.3 })));
        let sub = CircleDomain::disk(Complex::new(0.0, 0.0), 0.8);
        assert!(oracle_selfcheck(&HyperbolicDisk, &sub, 40).unwrap().pass);
    }

    struct WrongGradient;

    impl MetricOracle<f64> for WrongGradient {
        fn jet(&self, p: Complex<f64>) -> Jet2<f64> {
            let mut j = RoundSphere.jet(p);
            j.grad[0] += 0.01;
            j
        }
    }

    #[test]
    fn wrong_gradient_fails_selfcheck() {
        let rep = oracle_selfcheck(&WrongGradient, &CircleDomain::unit_disk(), 20).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn constant_factor_has_zero_residuals() {
        let rep = oracle_selfcheck(&Flat { c: 1.5 }, &CircleDomain::unit_disk(), 20).unwrap();
        assert_eq!(rep.max_grad_residual, 0.0);
        assert_eq!(rep.max_hess_residual, 0.0);
        assert!(rep.pass);
    }

    #[test]
    fn mobius_pullback_of_round_sphere_is_round_for_rotations() {
        let rot = Isometry::new(
            Complex::new(0.6, 0.8),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
        )
        .unwrap();
        let m = MobiusPullback::new(rot, Arc::new(RoundSphere));
        let p = Complex::new(0.3, -0.4);
        let a = m.jet(p);
        let b = MetricOracle::<f64>::jet(&RoundSphere, p);
        assert!((a.value - b.value).abs() < 1e-14);
        assert!((a.grad[0] - b.grad[0]).abs() < 1e-14);
    }
}
