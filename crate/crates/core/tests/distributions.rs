//! Sampler checks against analytic moments, quadrature CDFs and two-sample
//! tests.

mod common;

use backhaul_core::channels::{pointing_geometry, sample_pointing, AlphaMu, GammaGamma, Nakagami};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

fn draws<D: Distribution<f64>>(d: D, n: usize, seed: u64) -> Vec<f64> {
    ChaCha8Rng::seed_from_u64(seed).sample_iter(d).take(n).collect()
}

fn within(got: (f64, f64), want: f64, what: &str) {
    let (m, se) = got;
    assert!((m - want).abs() <= 3.0 * se, "{what}: {m} ± {se} vs {want}");
}

#[test]
fn quadrature_oracles_are_accurate() {
    // Independent reference values (adaptive quadrature of the same density
    // and of the product form P(XY <= 1)).
    assert!((gamma_gamma_cdf(4.343, 2.492, 1.0) - 0.627_891_653_5).abs() < 1e-6);
    assert!((rayleigh_ergodic_rate(10.0) - 2.906_514_808).abs() < 1e-6);
    // K_{1/2}(x) = sqrt(π/(2x))·e^(−x).
    for x in [0.1, 1.0, 4.0] {
        let want = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!((bessel_k(0.5, x) - want).abs() < 1e-9 * want.max(1.0));
    }
}

#[test]
fn gamma_gamma_moments() {
    let (a, b) = (4.343, 2.492);
    let xs = draws(GammaGamma::new(a, b).unwrap(), 1_000_000, 1);
    within(mean_se(&xs), 1.0, "mean");
    let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
    within(mean_se(&sq), (1.0 + 1.0 / a) * (1.0 + 1.0 / b), "second moment");
    let (m, _) = mean_se(&xs);
    let var = sq.iter().sum::<f64>() / sq.len() as f64 - m * m;
    let si = 1.0 / a + 1.0 / b + 1.0 / (a * b);
    assert!((var - si).abs() < 0.01, "scintillation index {var} vs {si}");
}

#[test]
fn gamma_gamma_cdf_at_one() {
    let n = 1_000_000;
    let xs = draws(GammaGamma::new(4.343, 2.492).unwrap(), n, 2);
    let p = xs.iter().filter(|&&x| x <= 1.0).count() as f64 / n as f64;
    let want = gamma_gamma_cdf(4.343, 2.492, 1.0);
    let se = (want * (1.0 - want) / n as f64).sqrt();
    assert!((p - want).abs() < 3.0 * se, "{p} vs {want}");
}

#[test]
fn alpha_mu_moments() {
    let (alpha, mu) = (2.0, 3.0);
    let xs = draws(AlphaMu::new(alpha, mu).unwrap(), 1_000_000, 3);
    let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
    // E[R²] = Γ(µ + 2/α) / (µ^(2/α) Γ(µ)).
    let want = libm::tgamma(mu + 2.0 / alpha) / (mu.powf(2.0 / alpha) * libm::tgamma(mu));
    assert!((want - 1.0).abs() < 1e-12);
    within(mean_se(&sq), want, "E[R²]");
    // E[R] = Γ(µ + 1/α) / (µ^(1/α) Γ(µ)).
    let m1 = libm::tgamma(mu + 0.5) / (mu.sqrt() * libm::tgamma(mu));
    within(mean_se(&xs), m1, "E[R]");
    // Non-Nakagami shape: E[R^α] = 1.
    let ys = draws(AlphaMu::new(1.5, 2.0).unwrap(), 1_000_000, 4);
    let pa: Vec<f64> = ys.iter().map(|y| y.powf(1.5)).collect();
    within(mean_se(&pa), 1.0, "E[R^α]");
}

#[test]
fn nakagami_moments() {
    let xs = draws(Nakagami::new(3.0, 1.0).unwrap(), 1_000_000, 5);
    let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
    within(mean_se(&sq), 1.0, "E[R²]");
    let m1 = libm::tgamma(3.5) / (libm::tgamma(3.0) * 3f64.sqrt());
    within(mean_se(&xs), m1, "E[R]");

    let n = 1_000_000;
    let ys = draws(Nakagami::new(2.0, 2.0).unwrap(), n, 6);
    let p: Vec<f64> = ys.iter().map(|y| y * y).collect();
    let (m, _) = mean_se(&p);
    let var = p.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
    // Var(R²) = Ω²/m = 2; its standard error is sqrt((µ4 − σ⁴)/n) ≈ 0.0055.
    assert!((var - 2.0).abs() < 3.0 * 0.0055, "{var}");

    let zs = draws(Nakagami::new(1.0, 1.0).unwrap(), n, 7);
    let below = zs.iter().filter(|z| **z * **z < 1.0).count() as f64 / n as f64;
    let want = 1.0 - (-1.0f64).exp();
    assert!((below - want).abs() < 3.0 * (want * (1.0 - want) / n as f64).sqrt());
}

#[test]
fn reduction_identities() {
    let n = 100_000;
    let crit = ks_critical_001(n, n);
    let mut a = draws(AlphaMu::new(2.0, 3.0).unwrap(), n, 8);
    let mut b = draws(Nakagami::new(3.0, 1.0).unwrap(), n, 9);
    let d = ks_two_sample(&mut a, &mut b);
    assert!(d < crit, "α-µ(2,3) vs Nakagami(3): D = {d}, critical {crit}");

    let mut c = draws(AlphaMu::new(2.0, 1.0).unwrap(), n, 10);
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let mut rayleigh: Vec<f64> = (0..n).map(|_| (-(1.0 - r.random::<f64>()).ln()).sqrt()).collect();
    let d = ks_two_sample(&mut c, &mut rayleigh.clone());
    assert!(d < crit, "α-µ(2,1) vs Rayleigh: D = {d}");

    let mut e = draws(Nakagami::new(1.0, 1.0).unwrap(), n, 12);
    let d = ks_two_sample(&mut e, &mut rayleigh);
    assert!(d < crit, "Nakagami(1) vs Rayleigh: D = {d}");
}

#[test]
fn pointing_cdf_matches_closed_form() {
    let n = 100_000;
    for (seed, (r, w, s)) in [(0.20, 0.40, 0.05), (0.1, 0.3, 0.12), (0.1, 0.6, 0.12)]
        .into_iter()
        .enumerate()
    {
        let g = pointing_geometry(r, w, s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(20 + seed as u64);
        let mut hs: Vec<f64> = (0..n).map(|_| sample_pointing(&g, s, &mut rng)).collect();
        assert!(hs.iter().all(|&h| h > 0.0 && h <= g.a0));
        let d = ks_one_sample(&mut hs, |h| g.cdf(h));
        // Three standard errors of an empirical CDF value: 3·sqrt(1/4n).
        let bound = 3.0 * (0.25 / n as f64).sqrt();
        assert!(d < bound, "r={r} w={w} σ={s}: sup distance {d} vs {bound}");
    }
}
