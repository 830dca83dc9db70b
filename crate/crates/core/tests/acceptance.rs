//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

use epsw::epstein::*;
use epsw::hyp3::{CircleBdry, GeodesicPlane, Isometry, Side};
use epsw::loewner::*;
use epsw::metric::*;
use epsw::quad::QuadratureSpec;
use epsw::schottky::*;
use epsw::wvol::*;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;
type Oracle = Arc<dyn MetricOracle<f64>>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> epsw::Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn cx(a: f64, b: f64) -> C {
    C::new(a, b)
}

fn three_circles() -> CircleDomain<f64> {
    CircleDomain::from_circles(&[(cx(0.0, 0.0), 1.0), (cx(0.45, 0.1), 0.2), (cx(-0.4, -0.3), 0.25)]).unwrap()
}

fn random_fourier(rng: &mut ChaCha8Rng) -> Oracle {
    let coeffs = (0..4).map(|_| cx(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))).collect();
    Arc::new(FourierBump { eps: rng.gen_range(0.1..0.5), coeffs })
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> Oracle {
    let center = cx(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
    Arc::new(GaussianBump { amplitude: rng.gen_range(-0.6..0.6), center, width: rng.gen_range(0.2..0.6) })
}

fn random_circle(rng: &mut ChaCha8Rng) -> CircleBdry<f64> {
    let side = if rng.gen_bool(0.5) { Side::Inside } else { Side::Outside };
    CircleBdry::new(cx(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)), rng.gen_range(0.4..1.5), side)
}

fn flat() -> Oracle {
    Arc::new(Flat { c: 0.0 })
}

fn criterion_1() -> epsw::Result<Outcome> {
    let w = w_volume(&CircleDomain::unit_disk(), Arc::new(RoundSphere), &QuadratureSpec::default())?;
    let terms = [w.volume.value, w.mean_curvature.total, w.area.value];
    let pass = w.w.abs() < 1e-6 && terms.iter().all(|t| t.abs() < 1e-6);
    outcome(pass, format!("W = {:.3e}, volume {:.3e}, mean curvature {:.3e}, area {:.3e}", w.w, terms[0], terms[1], terms[2]))
}

fn criterion_2() -> epsw::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    let mut min_order = f64::INFINITY;
    let mut unmeasured = 0;
    let mut cases = 0;
    let domains: [(CircleDomain<f64>, &[usize], fn(&mut ChaCha8Rng) -> Oracle); 2] = [
        (CircleDomain::unit_disk(), &[32, 64, 128], random_fourier),
        (three_circles(), &[128, 256, 512], random_gaussian),
    ];
    for (domain, levels, make) in &domains {
        for _ in 0..5 {
            let phi = make(&mut rng);
            let check = w_difference_check(domain, flat(), phi.clone(), &spec, DIFFERENCE_TOLERANCE)?;
            worst = worst.max(check.residual);
            let study = halving_study(domain, flat(), phi, levels)?;
            match study.observed_order {
                Some(o) => min_order = min_order.min(o),
                None => unmeasured += 1,
            }
            cases += 1;
        }
    }
    let pass = worst <= DIFFERENCE_TOLERANCE && min_order >= 1.5 && unmeasured == 0;
    outcome(
        pass,
        format!("{cases} metrics, worst |ΔW - RHS| = {worst:.2e}, smallest halving order {min_order:.2}, unmeasured {unmeasured}"),
    )
}

fn criterion_3() -> epsw::Result<Outcome> {
    let d = CircleDomain::unit_disk();
    let g: Oracle = Arc::new(GaussianBump { amplitude: 0.4, center: cx(0.2, -0.1), width: 0.4 });
    let fine = w_derivative_check(&d, flat(), g.clone(), 0.1, &QuadratureSpec::default(), 1e-4)?;
    let coarse = w_derivative_check(&d, flat(), g, 0.1, &QuadratureSpec::with_resolution(32), 1e-2)?;
    let order = coarse.order.unwrap_or(f64::NAN);
    let fine_residual = fine.residuals.iter().copied().fold(0.0, f64::max);
    let pass = fine.pass && order >= 1.9;
    let fine_order = fine.order.map_or("below rounding floor".to_string(), |o| format!("{o:.2}"));
    outcome(
        pass,
        format!(
            "default resolution: max residual {fine_residual:.2e}, order {fine_order}; resolution 32: residuals {:?}, order {order:.2}",
            coarse.residuals.iter().map(|r| format!("{r:.1e}")).collect::<Vec<_>>()
        ),
    )
}

/// Frame of the caterpillar by Richardson-extrapolated central differences.
fn fd_frame(m: &dyn MetricOracle<f64>, c: &CircleBdry<f64>, s: f64, t: f64) -> Frame<f64> {
    let at = |s: f64, t: f64| {
        let j = BoundaryJet::new(m, c, s);
        (caterpillar_point(&j, t), caterpillar_normal(&j, t))
    };
    let d = |ds: f64, dt: f64| {
        let c1 = |h: f64| {
            let (xa, na) = at(s + ds * h, t + dt * h);
            let (xb, nb) = at(s - ds * h, t - dt * h);
            ([0, 1, 2].map(|i| (xa[i] - xb[i]) / (2.0 * h)), [0, 1, 2].map(|i| (na[i] - nb[i]) / (2.0 * h)))
        };
        let (a, b, c) = (c1(1e-3), c1(5e-4), c1(2.5e-4));
        let r = |u: [f64; 3], v: [f64; 3]| [0, 1, 2].map(|i| (4.0 * v[i] - u[i]) / 3.0);
        let (r1x, r2x, r1n, r2n) = (r(a.0, b.0), r(b.0, c.0), r(a.1, b.1), r(b.1, c.1));
        let q = |u: [f64; 3], v: [f64; 3]| [0, 1, 2].map(|i| (16.0 * v[i] - u[i]) / 15.0);
        (q(r1x, r2x), q(r1n, r2n))
    };
    let (x, n) = at(s, t);
    let (xu, nu) = d(1.0, 0.0);
    let (xv, nv) = d(0.0, 1.0);
    Frame { x, n, xu, xv, nu, nv }
}

fn criterion_4() -> epsw::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut form_err, mut h_err, mut cov_err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut k1_exact = true;
    let mut checked = 0;
    while checked < 100 {
        let m = random_fourier(&mut rng);
        let c = random_circle(&mut rng);
        let s = rng.gen_range(0.0..c.length());
        let t = rng.gen_range(-1.5..1.5);
        let jet = BoundaryJet::new(&*m, &c, s);
        if caterpillar_denominator(&jet, t).abs() < 0.05 {
            continue;
        }
        let closed = caterpillar_shape(&jet, t)?;
        let fd = fd_frame(&*m, &c, s, t);
        let (i_fd, ii_fd) = (fd.first_form(), fd.second_form());
        for a in 0..2 {
            for b in 0..2 {
                form_err = form_err.max((i_fd[a][b] - closed.first_form[a][b]).abs());
                form_err = form_err.max((ii_fd[a][b] - closed.second_form[a][b]).abs());
            }
        }
        if let (Some((_, h)), Some(hc)) = (shape_eigenvalues(&i_fd, &ii_fd), closed.mean_curvature) {
            h_err = h_err.max((h - hc).abs() / (1.0 + hc.abs()));
        }
        k1_exact &= closed.principal.map_or(false, |k| k[0] == -1.0);
        let cov = fd.cov_v();
        for i in 0..3 {
            cov_err = cov_err.max((cov[i] - fd.xv[i]).abs());
        }
        checked += 1;
    }
    let pass = form_err < 1e-6 && h_err < 1e-6 && k1_exact && cov_err < 1e-7;
    outcome(
        pass,
        format!("{checked} jets: I/II error {form_err:.1e}, H error {h_err:.1e}, k1 = -1 exactly: {k1_exact}, ∇_T N - T {cov_err:.1e}"),
    )
}

fn criterion_5() -> epsw::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut tangency, mut angle, mut landing): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..100 {
        let m = random_fourier(&mut rng);
        let c = random_circle(&mut rng);
        let jet = BoundaryJet::new(&*m, &c, rng.gen_range(0.0..c.length()));
        let t0 = t_start(&jet);
        let n1 = caterpillar_normal(&jet, t0);
        let n2 = domain_epstein_gauss(&*m, jet.gamma);
        let z = caterpillar(&jet, t0).z;
        tangency = tangency.max((1.0 - (n1[0] * n2[0] + n1[1] * n2[1] + n1[2] * n2[2]) / (z * z)).abs());
        let tl = t_land(&jet, &GeodesicPlane::from_circle(&c))?;
        landing = landing.max((tl - c.curvature()).abs());
        let (xl, nl) = (caterpillar_point(&jet, tl), caterpillar_normal(&jet, tl));
        let r = [xl[0] - c.center.re, xl[1] - c.center.im, xl[2]];
        let norm = |v: &[f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let cos = (r[0] * nl[0] + r[1] * nl[1] + r[2] * nl[2]) / (norm(&r) * norm(&nl));
        angle = angle.max((cos.clamp(-1.0, 1.0).acos() - PI / 2.0).abs());
    }
    let mut builds_pass = true;
    for domain in [CircleDomain::unit_disk(), three_circles()] {
        for _ in 0..3 {
            let ps = build_piecewise_sphere(&domain, random_gaussian(&mut rng), &QuadratureSpec::default())?;
            builds_pass &= ps.report.pass();
            tangency = tangency.max(ps.report.tangency_residual);
            angle = angle.max(ps.report.landing_angle_residual.asin());
            landing = landing.max(ps.report.landing_residual);
        }
    }
    let pass = tangency < 1e-7 && angle < 1e-7 && landing < 1e-9 && builds_pass;
    outcome(
        pass,
        format!("tangency {tangency:.1e}, landing angle - π/2 {angle:.1e}, |t_land - k| {landing:.1e}, build reports pass: {builds_pass}"),
    )
}

fn criterion_6() -> epsw::Result<Outcome> {
    let config = SchottkyConfiguration::new(
        2,
        &[(cx(6.0, 0.0), 1.0), (cx(-6.0, 0.0), 1.0), (cx(0.0, 6.0), 1.0), (cx(0.0, -6.0), 1.0)],
    )?;
    let cert = vr_upper_bounds(&config)?;
    let pass = cert.hexagon_edges == 6
        && cert.hexagon_angle_residual < 1e-7
        && cert.gauss_bonnet_max_residual < 1e-7
        && cert.angle_inequality.holds
        && cert.isoperimetric.holds
        && cert.min_plane_distance >= 4.0
        && cert.minus_two_pi_certificate
        && (cert.unconditional_bound - 4.0 * PI).abs() < 1e-12;
    outcome(
        pass,
        format!(
            "hexagon edges {}, angle residual {:.1e}, Gauss-Bonnet {:.1e}, vol {:.2e} < Σθ - 2π = {:.4}, vol < area/2 = {:.4}, min distance {:.5}, -2π certificate {}, bound {:.4} = 4π",
            cert.hexagon_edges,
            cert.hexagon_angle_residual,
            cert.gauss_bonnet_max_residual,
            cert.angle_inequality.lhs,
            cert.angle_inequality.rhs,
            cert.isoperimetric.rhs,
            cert.min_plane_distance,
            cert.minus_two_pi_certificate,
            cert.unconditional_bound
        ),
    )
}

fn criterion_7() -> epsw::Result<Outcome> {
    let spec = QuadratureSpec::default();
    let options = UniformizeOptions::default();
    let energy = |curve: &JordanCurve| -> epsw::Result<LoewnerEnergy> { loewner_energy(&uniformize(curve, &options)?, &spec) };
    let circle = energy(&JordanCurve::circle(cx(0.3, -0.2), 1.7)?)?.energy;

    let base = JordanCurve::polynomial_image(&[cx(0.0, 0.0), cx(1.0, 0.0), cx(0.1, 0.05), cx(0.0, 0.08)])?;
    let e0 = energy(&base)?.energy;
    let t = Isometry::new(cx(1.0, 0.2), cx(0.5, 0.0), cx(-0.25, 0.1), cx(1.0, 0.0))?;
    let moved = energy(&base.mobius_image(&t, 1024)?)?.energy;
    let mobius_gap = (moved - e0).abs();

    let polys: [&[C]; 3] = [
        &[cx(0.0, 0.0), cx(1.0, 0.0), cx(0.1, 0.0)],
        &[cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(0.15, 0.05)],
        &[cx(0.3, 0.0), cx(1.0, 0.0), cx(0.1, 0.05), cx(0.0, 0.08)],
    ];
    let mut worst_gap: f64 = 0.0;
    for coeffs in polys {
        let r = loewner_report(&JordanCurve::polynomial_image(coeffs)?, &options, &spec)?;
        worst_gap = worst_gap.max(r.gap / r.energy.max(1.0));
    }
    let pass = circle.abs() <= 1e-4 && mobius_gap <= 1e-3 && worst_gap <= PIPELINE_TOLERANCE;
    outcome(
        pass,
        format!("circle {circle:.1e}, Möbius change {mobius_gap:.1e} (energy {e0:.6}), worst pipeline gap {worst_gap:.1e} over 3 polynomial curves"),
    )
}

fn criterion_8() -> epsw::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    let mut maps = 0;
    for domain in [CircleDomain::unit_disk(), three_circles()] {
        let phi = random_fourier(&mut rng);
        let w0 = w_volume(&domain, phi.clone(), &spec)?.w;
        let mut done = 0;
        while done < 3 {
            let mut e = || cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let (a, b, c, d) = (e() + 1.5, e(), e() * 0.4, e() + 1.5);
            let Ok(g) = Isometry::new(a, b, c, d) else { continue };
            let Ok((d2, m2)) = transport(&domain, phi.clone(), &g) else { continue };
            let w1 = w_volume(&d2, m2, &spec)?.w;
            worst = worst.max((w1 - w0).abs() / w0.abs().max(1.0));
            done += 1;
            maps += 1;
        }
    }
    outcome(worst < 1e-5, format!("{maps} random Möbius maps, worst relative change {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> epsw::Result<Outcome>, Option<Duration>); 8] = [
        ("round-metric nullity", criterion_1, Some(Duration::from_secs(10))),
        ("Polyakov-Alvarez two-pipeline identity", criterion_2, Some(Duration::from_secs(300))),
        ("derivative identity", criterion_3, None),
        ("caterpillar closed forms", criterion_4, None),
        ("piecewise-sphere structure", criterion_5, None),
        ("Schottky certificates", criterion_6, Some(Duration::from_secs(60))),
        ("Loewner energy", criterion_7, Some(Duration::from_secs(300))),
        ("Möbius invariance of W", criterion_8, None),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = budget.map_or(true, |b| elapsed <= b);
        let (pass, detail) = match result {
            Ok(o) => (o.pass && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        let budget = budget.map_or(String::new(), |b| format!(" (limit {} s)", b.as_secs()));
        println!(
            "criterion {} {}: {}. {detail}. Runtime {:.1} s{budget}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
