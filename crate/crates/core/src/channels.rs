//! Random-variate generation for turbulence, small-scale fading and pointing
//! error, plus the parameter maps that feed them.
//!
//! All envelopes are unit-normalised: E[I] = 1 for Gamma-Gamma irradiance,
//! E[R^α] = 1 for α-µ and E[R²] = Ω for Nakagami. Mean path power is applied
//! by [`crate::linkbudget`].

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use crate::error::{Error, Result};

/// Gaussian error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Gamma-Gamma irradiance `I = X·Y` with unit-mean Gamma factors.
#[derive(Debug, Clone, Copy)]
pub struct GammaGamma {
    x: Gamma<f64>,
    y: Gamma<f64>,
}

impl GammaGamma {
    pub fn new(alpha_f: f64, beta_f: f64) -> Result<Self> {
        Ok(GammaGamma {
            x: unit_gamma("alpha_f", alpha_f)?,
            y: unit_gamma("beta_f", beta_f)?,
        })
    }
}

impl Distribution<f64> for GammaGamma {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.x.sample(rng) * self.y.sample(rng)
    }
}

/// α-µ envelope: `R^α ~ Gamma(µ, mean 1)`.
#[derive(Debug, Clone, Copy)]
pub struct AlphaMu {
    inv_alpha: f64,
    g: Gamma<f64>,
}

impl AlphaMu {
    pub fn new(alpha: f64, mu: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::param("alpha", alpha, "must be > 0"));
        }
        Ok(AlphaMu {
            inv_alpha: 1.0 / alpha,
            g: unit_gamma("mu", mu)?,
        })
    }
}

impl Distribution<f64> for AlphaMu {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let g: f64 = self.g.sample(rng);
        if self.inv_alpha == 0.5 {
            g.sqrt()
        } else {
            g.powf(self.inv_alpha)
        }
    }
}

/// Nakagami-m envelope: `R² ~ Gamma(m, mean Ω)`.
#[derive(Debug, Clone, Copy)]
pub struct Nakagami {
    power: Gamma<f64>,
}

impl Nakagami {
    pub fn new(m: f64, omega: f64) -> Result<Self> {
        if !(m >= 0.5 && m.is_finite()) {
            return Err(Error::param("m", m, "Nakagami shape must be >= 0.5"));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::param("omega", omega, "must be > 0"));
        }
        let power = Gamma::new(m, omega / m).map_err(|_| Error::param("m", m, "invalid shape"))?;
        Ok(Nakagami { power })
    }
}

impl Distribution<f64> for Nakagami {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let p: f64 = self.power.sample(rng);
        p.sqrt()
    }
}

fn unit_gamma(name: &'static str, shape: f64) -> Result<Gamma<f64>> {
    if !(shape > 0.0 && shape.is_finite()) {
        return Err(Error::param(name, shape, "must be > 0"));
    }
    Gamma::new(shape, 1.0 / shape).map_err(|_| Error::param(name, shape, "invalid shape"))
}

pub fn sample_gamma_gamma<R: Rng + ?Sized>(alpha_f: f64, beta_f: f64, rng: &mut R) -> Result<f64> {
    Ok(GammaGamma::new(alpha_f, beta_f)?.sample(rng))
}

pub fn sample_alpha_mu<R: Rng + ?Sized>(alpha: f64, mu: f64, rng: &mut R) -> Result<f64> {
    Ok(AlphaMu::new(alpha, mu)?.sample(rng))
}

pub fn sample_nakagami<R: Rng + ?Sized>(m: f64, omega: f64, rng: &mut R) -> Result<f64> {
    Ok(Nakagami::new(m, omega)?.sample(rng))
}

/// Plane-wave Gamma-Gamma shapes `(α, β)` for a path of `distance` metres.
pub fn gg_shapes_from_rytov(cn2: f64, wavelength: f64, distance: f64) -> Result<(f64, f64)> {
    for (name, v) in [("cn2", cn2), ("wavelength", wavelength), ("distance", distance)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::param(name, v, "must be > 0"));
        }
    }
    let k = 2.0 * std::f64::consts::PI / wavelength;
    let s2 = 1.23 * cn2 * k.powf(7.0 / 6.0) * distance.powf(11.0 / 6.0);
    let s125 = s2.powf(1.2); // σ_R^(12/5)
    let alpha = 1.0 / (0.49 * s2 / (1.0 + 1.11 * s125).powf(7.0 / 6.0)).exp_m1();
    let beta = 1.0 / (0.51 * s2 / (1.0 + 0.69 * s125).powf(5.0 / 6.0)).exp_m1();
    Ok((alpha, beta))
}

/// Collected-power parameters of a Gaussian beam on a circular aperture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingGeometry {
    /// Fraction of power collected at zero offset.
    pub a0: f64,
    /// Equivalent beamwidth (m).
    pub w_eq: f64,
    /// `w_eq / (2σ)`. Infinite when the jitter is zero.
    pub xi: f64,
}

impl PointingGeometry {
    /// Pointing gain at radial offset `r_d` (m).
    pub fn gain_at(&self, r_d: f64) -> f64 {
        self.a0 * (-2.0 * r_d * r_d / (self.w_eq * self.w_eq)).exp()
    }

    /// `P(hp <= h)` under Rayleigh radial jitter.
    pub fn cdf(&self, h: f64) -> f64 {
        if h <= 0.0 {
            0.0
        } else if h >= self.a0 {
            1.0
        } else {
            (h / self.a0).powf(self.xi * self.xi)
        }
    }
}

/// Jitter of zero is accepted and yields `xi = ∞` (perfect alignment).
pub fn pointing_geometry(
    receiver_radius: f64,
    beamwidth: f64,
    jitter_sigma: f64,
) -> Result<PointingGeometry> {
    if !(receiver_radius > 0.0 && receiver_radius.is_finite()) {
        return Err(Error::param("receiver_radius", receiver_radius, "must be > 0"));
    }
    if !(beamwidth > 0.0 && beamwidth.is_finite()) {
        return Err(Error::param("beamwidth", beamwidth, "must be > 0"));
    }
    if !(jitter_sigma >= 0.0 && jitter_sigma.is_finite()) {
        return Err(Error::param("jitter_sigma", jitter_sigma, "must be >= 0"));
    }
    let v = (std::f64::consts::PI / 2.0).sqrt() * receiver_radius / beamwidth;
    let ev = erf(v);
    let a0 = ev * ev;
    // Beams much narrower than the aperture overflow to w_eq = ∞: pointing
    // jitter then costs nothing and hp = a0.
    let w_eq2 = beamwidth * beamwidth * std::f64::consts::PI.sqrt() * ev * (v * v).exp() / (2.0 * v);
    let w_eq = w_eq2.sqrt();
    if !(a0 > 0.0) || w_eq.is_nan() {
        return Err(Error::param(
            "beamwidth",
            beamwidth,
            "pointing geometry is degenerate for this radius/beamwidth ratio",
        ));
    }
    let xi = w_eq / (2.0 * jitter_sigma);
    Ok(PointingGeometry { a0, w_eq, xi })
}

/// Draws a pointing gain for Rayleigh radial jitter with per-axis deviation
/// `jitter_sigma`.
pub fn sample_pointing<R: Rng + ?Sized>(geom: &PointingGeometry, jitter_sigma: f64, rng: &mut R) -> f64 {
    // R_d² = X² + Y² is exponential with mean 2σ².
    let e: f64 = Exp1.sample(rng);
    let r2 = 2.0 * jitter_sigma * jitter_sigma * e;
    geom.a0 * (-2.0 * r2 / (geom.w_eq * geom.w_eq)).exp()
}

/// One realisation of the random factors on a link.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw {
    /// Envelope per antenna path; a single irradiance value for FSO.
    pub envelopes: Vec<f64>,
    /// Pointing gain `hp`. Exactly 1 where misalignment is not modelled.
    pub pointing_gain: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Maclaurin series, exact to double precision for |x| < 3.
    fn erf_series(x: f64) -> f64 {
        let mut term = x;
        let mut sum = x;
        for n in 1..200 {
            term *= -x * x / n as f64;
            sum += term / (2 * n + 1) as f64;
        }
        2.0 / std::f64::consts::PI.sqrt() * sum
    }

    #[test]
    fn erf_matches_series() {
        for &x in &[0.0, 0.1, 0.5, 0.6267, 1.0, 1.7, 2.5] {
            assert!((erf(x) - erf_series(x)).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn rytov_reproduces_reference_shapes() {
        let (a, b) = gg_shapes_from_rytov(1e-12, 1550e-9, 200.0).unwrap();
        assert!((a - 4.343).abs() < 0.02 && (b - 2.492).abs() < 0.02, "{a} {b}");
        let (a, b) = gg_shapes_from_rytov(5e-13, 1550e-9, 200.0).unwrap();
        assert!((a - 5.838).abs() < 0.02 && (b - 4.249).abs() < 0.02, "{a} {b}");
    }

    #[test]
    fn rytov_turbulence_free_limit() {
        let (a, b) = gg_shapes_from_rytov(1e-18, 1550e-9, 200.0).unwrap();
        assert!(a > 1e3 && b > 1e3);
    }

    #[test]
    fn rytov_rejects_bad_input() {
        assert_eq!(
            gg_shapes_from_rytov(0.0, 1550e-9, 200.0).unwrap_err().key(),
            Some("cn2")
        );
        assert!(gg_shapes_from_rytov(1e-12, 1550e-9, -1.0).is_err());
    }

    #[test]
    fn samplers_reject_bad_shapes() {
        let mut r = rng(0);
        assert!(sample_gamma_gamma(0.0, 1.0, &mut r).is_err());
        assert!(sample_gamma_gamma(1.0, -2.0, &mut r).is_err());
        assert!(sample_alpha_mu(0.0, 1.0, &mut r).is_err());
        assert!(sample_alpha_mu(2.0, 0.0, &mut r).is_err());
        assert!(sample_nakagami(0.4, 1.0, &mut r).is_err());
        assert!(sample_nakagami(1.0, 0.0, &mut r).is_err());
    }

    #[test]
    fn pointing_reference_geometry() {
        let g = pointing_geometry(0.2, 0.4, 0.05).unwrap();
        let v = (std::f64::consts::PI / 2.0).sqrt() * 0.5;
        assert!((v - 0.626_657_068_657_750_1).abs() < 1e-15);
        let e = erf_series(v);
        assert!((g.a0 - e * e).abs() < 1e-14);
        // erf(0.62665706865775) = 0.62450474..., squared.
        assert!((g.a0 - 0.390_006_173_767).abs() < 1e-11, "{}", g.a0);
        let w_eq2 = 0.16 * std::f64::consts::PI.sqrt() * e / (2.0 * v * (-v * v).exp());
        assert!((g.w_eq - w_eq2.sqrt()).abs() < 1e-14);
        assert!((g.xi - g.w_eq / 0.1).abs() < 1e-14);
    }

    #[test]
    fn narrow_beam_collects_everything() {
        let g = pointing_geometry(0.2, 1e-3, 0.05).unwrap();
        assert!((g.a0 - 1.0).abs() < 1e-12);
        let mut r = rng(1);
        assert_eq!(sample_pointing(&g, 0.05, &mut r), g.a0);
    }

    #[test]
    fn doubling_jitter_halves_xi() {
        let g1 = pointing_geometry(0.2, 0.4, 0.05).unwrap();
        let g2 = pointing_geometry(0.2, 0.4, 0.10).unwrap();
        assert_eq!(g1.a0, g2.a0);
        assert_eq!(g1.w_eq, g2.w_eq);
        assert!((g2.xi - g1.xi / 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_offset_and_zero_jitter_give_a0() {
        let g = pointing_geometry(0.2, 0.4, 0.05).unwrap();
        assert_eq!(g.gain_at(0.0), g.a0);
        let g0 = pointing_geometry(0.2, 0.4, 0.0).unwrap();
        let mut r = rng(3);
        for _ in 0..1000 {
            assert_eq!(sample_pointing(&g0, 0.0, &mut r), g0.a0);
        }
    }

    #[test]
    fn pointing_never_exceeds_a0() {
        let g = pointing_geometry(0.1, 0.3, 0.12).unwrap();
        let mut r = rng(4);
        for _ in 0..10_000 {
            let h = sample_pointing(&g, 0.12, &mut r);
            assert!(h > 0.0 && h <= g.a0);
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let gg = GammaGamma::new(4.343, 2.492).unwrap();
        let a: Vec<f64> = (&mut rng(9)).sample_iter(gg).take(100).collect();
        let b: Vec<f64> = (&mut rng(9)).sample_iter(gg).take(100).collect();
        assert_eq!(a, b);
    }
}
