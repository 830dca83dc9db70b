use crate::scalar::{lit, Real};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n > 0, "Gauss-Legendre rule needs at least one node");
    let mut x = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let nt = T::count(n);
    let eps = T::epsilon() * lit(4.0);
    for i in 0..(n + 1) / 2 {
        let mut z = (T::PI() * (T::count(i) + lit(0.75)) / (nt + lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (mut p0, mut p1) = (T::one(), z);
            for k in 2..=n {
                let kt = T::count(k);
                let p2 = ((lit::<T>(2.0) * kt - T::one()) * z * p1 - (kt - T::one()) * p0) / kt;
                p0 = p1;
                p1 = p2;
            }
            dp = nt * (z * p1 - p0) / (z * z - T::one());
            let dz = p1 / dp;
            z = z - dz;
            if dz.abs() <= eps {
                break;
            }
        }
        let wi = lit::<T>(2.0) / ((T::one() - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = T::zero();
    }
    (x, w)
}

/// Gauss–Legendre rule mapped to `[a, b]` as `(node, weight)` pairs.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre::<f64>(n);
    let h = 0.5 * (b - a);
    x.iter().zip(&w).map(|(&xi, &wi)| (a + h * (xi + 1.0), h * wi)).collect()
}

/// Periodic trapezoid rule on `[0, period)` with `n` equal weights.
pub fn periodic_trapezoid(n: usize, period: f64) -> Vec<(f64, f64)> {
    let h = period / n as f64;
    (0..n).map(|k| (k as f64 * h, h)).collect()
}

/// Pairwise (cascade) summation; the result depends only on the order of `v`.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if v.len() <= BLOCK {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in 1..12 {
            let (x, w) = gauss_legendre::<f64>(n);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n = {n}, degree {deg}: {q} vs {exact}");
            }
        }
    }

    #[test]
    fn single_precision_rule_is_usable() {
        let (x, w) = gauss_legendre::<f32>(8);
        let q: f32 = x.iter().zip(&w).map(|(xi, wi)| wi * xi * xi).sum();
        assert!((q - 2.0 / 3.0).abs() < 1e-5);
    }

    #[test]
    fn pairwise_sum_matches_naive_sum_on_integers() {
        let v: Vec<f64> = (0..1000).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&v), 499500.0);
    }
}
