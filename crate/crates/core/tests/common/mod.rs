//! Independent statistical oracles shared by the integration suites.

#![allow(dead_code)]

use std::f64::consts::LN_2;

/// Modified Bessel function of the second kind, from
/// `K_ν(x) = ∫_0^∞ exp(−x·cosh t)·cosh(νt) dt` by the trapezoid rule.
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    let t_max = (60.0 / x).max(1.0).acosh() + 3.0;
    let n = 8000;
    let h = t_max / n as f64;
    let mut s = 0.5 * (-x).exp();
    for i in 1..=n {
        let t = i as f64 * h;
        let w = if i == n { 0.5 } else { 1.0 };
        s += w * (-x * t.cosh()).exp() * (nu * t).cosh();
    }
    s * h
}

/// Gamma-Gamma density.
pub fn gamma_gamma_pdf(alpha: f64, beta: f64, i: f64) -> f64 {
    let ab = alpha * beta;
    let log_c =
        std::f64::consts::LN_2 + 0.5 * (alpha + beta) * ab.ln() - libm::lgamma(alpha) - libm::lgamma(beta);
    (log_c + (0.5 * (alpha + beta) - 1.0) * i.ln()).exp() * bessel_k(alpha - beta, 2.0 * (ab * i).sqrt())
}

/// Gamma-Gamma CDF by composite Simpson quadrature of the density, with
/// `I = u²` to smooth the origin.
pub fn gamma_gamma_cdf(alpha: f64, beta: f64, x: f64) -> f64 {
    let umax = x.sqrt();
    let n = 2000;
    let h = umax / n as f64;
    let g = |u: f64| {
        if u == 0.0 {
            0.0
        } else {
            2.0 * u * gamma_gamma_pdf(alpha, beta, u * u)
        }
    };
    let mut s = g(0.0) + g(umax);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * g(k as f64 * h);
    }
    s * h / 3.0
}

/// `∫_0^∞ log2(1+x)·e^(−x/m)/m dx` by Simpson on `x = m·t/(1−t)`.
pub fn rayleigh_ergodic_rate(mean: f64) -> f64 {
    let n = 200_000;
    let h = 1.0 / n as f64;
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let x = mean * t / (1.0 - t);
        let dx = mean / ((1.0 - t) * (1.0 - t));
        (x.ln_1p() / LN_2) * (-x / mean).exp() / mean * dx
    };
    let mut s = g(0.0) + g(1.0);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * g(k as f64 * h);
    }
    s * h / 3.0
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Asymptotic critical value of the two-sample statistic at level 0.01.
pub fn ks_critical_001(n: usize, m: usize) -> f64 {
    1.628 * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Largest gap between the empirical CDF of `xs` and `cdf`.
pub fn ks_one_sample(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(k, &x)| {
            let f = cdf(x);
            (f - k as f64 / n).abs().max((f - (k + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

/// Sample mean and its standard error.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// One-sided binomial tail `P(X >= k)` for `X ~ Bin(n, 1/2)`.
pub fn sign_test_p(k: u64, n: u64) -> f64 {
    let mut p = 0.0;
    for i in k..=n {
        p += (libm::lgamma(n as f64 + 1.0)
            - libm::lgamma(i as f64 + 1.0)
            - libm::lgamma((n - i) as f64 + 1.0)
            - n as f64 * LN_2)
            .exp();
    }
    p
}
