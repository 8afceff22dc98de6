//! Deterministic path gains and instantaneous SNR for each link technology.
//!
//! A [`Link`] bundles a link's mean SNR with its fading and pointing
//! samplers so Monte Carlo loops draw SNRs without re-deriving anything.

pub mod gaseous;

use std::fmt;

use rand::Rng;
use rand_distr::Distribution;

use crate::channels::{
    pointing_geometry, sample_pointing, AlphaMu, ChannelDraw, GammaGamma, Nakagami, PointingGeometry,
};
use crate::error::{Error, Result};
use crate::scenario::{db_to_linear, Scenario};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Shortest link the RF models accept (m).
pub const MIN_RF_DISTANCE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Technology {
    Fso,
    SubThz,
    MmWave,
}

impl fmt::Display for Technology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Technology::Fso => "fso",
            Technology::SubThz => "subthz",
            Technology::MmWave => "mmwave",
        })
    }
}

/// Antenna combining on a multi-antenna RF link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combining {
    /// Sum of all path powers.
    Mrc,
    /// First path only.
    Single,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// SNR at unit fading and perfect alignment. For FSO this already holds
    /// the squared conversion coefficient and atmospheric loss.
    pub mean_snr_linear: f64,
    pub technology: Technology,
}

/// Kim-model extinction coefficient (1/m).
pub fn kim_extinction(visibility_km: f64, wavelength_m: f64) -> f64 {
    let v = visibility_km;
    let q = if v > 50.0 {
        1.6
    } else if v > 6.0 {
        1.3
    } else if v > 1.0 {
        0.16 * v + 0.34
    } else if v > 0.5 {
        v - 0.5
    } else {
        0.0
    };
    3.91 / (v * 1e3) * (wavelength_m / 550e-9).powf(-q)
}

/// Atmospheric power transmittance of an optical path.
pub fn fso_path_gain(visibility_km: f64, wavelength_m: f64, distance_m: f64) -> Result<f64> {
    positive("visibility", visibility_km)?;
    positive("wavelength", wavelength_m)?;
    positive("distance", distance_m)?;
    Ok((-kim_extinction(visibility_km, wavelength_m) * distance_m).exp())
}

fn free_space(frequency_hz: f64, distance_m: f64) -> f64 {
    let x = SPEED_OF_LIGHT / (4.0 * std::f64::consts::PI * frequency_hz * distance_m);
    x * x
}

fn rf_distance(distance_m: f64) -> Result<()> {
    if distance_m >= MIN_RF_DISTANCE && distance_m.is_finite() {
        Ok(())
    } else {
        Err(Error::param(
            "distance",
            distance_m,
            "RF links must be at least 1 m long",
        ))
    }
}

/// Antenna gains, free-space loss and clear-air gaseous absorption.
#[allow(clippy::too_many_arguments)]
pub fn subthz_path_gain(
    frequency_hz: f64,
    distance_m: f64,
    tx_gain_db: f64,
    rx_gain_db: f64,
    pressure_pa: f64,
    temperature_k: f64,
    humidity: f64,
) -> Result<f64> {
    positive("frequency", frequency_hz)?;
    if frequency_hz > gaseous::MAX_FREQUENCY_HZ {
        return Err(Error::param(
            "frequency",
            frequency_hz,
            "absorption model is valid up to 450 GHz",
        ));
    }
    rf_distance(distance_m)?;
    positive("pressure", pressure_pa)?;
    positive("temperature", temperature_k)?;
    if !(0.0..=1.0).contains(&humidity) {
        return Err(Error::param("humidity", humidity, "must lie in [0, 1]"));
    }
    let atm = gaseous::Atmosphere::from_humidity(pressure_pa, temperature_k, humidity);
    let kappa = gaseous::specific_attenuation_db_per_km(frequency_hz / 1e9, &atm);
    Ok(db_to_linear(tx_gain_db + rx_gain_db - kappa * distance_m / 1e3)
        * free_space(frequency_hz, distance_m))
}

/// Antenna gains, free-space loss and fixed per-km absorption.
pub fn mmwave_path_gain(
    frequency_hz: f64,
    distance_m: f64,
    tx_gain_db: f64,
    rx_gain_db: f64,
    oxygen_db_per_km: f64,
    rain_db_per_km: f64,
) -> Result<f64> {
    positive("frequency", frequency_hz)?;
    rf_distance(distance_m)?;
    non_negative("oxygen_db_per_km", oxygen_db_per_km)?;
    non_negative("rain_db_per_km", rain_db_per_km)?;
    let absorption = (oxygen_db_per_km + rain_db_per_km) * distance_m / 1e3;
    Ok(db_to_linear(tx_gain_db + rx_gain_db - absorption) * free_space(frequency_hz, distance_m))
}

/// SNR of one draw.
///
/// FSO (IM/DD): `mean·(I·hp)²`. RF: `mean·hp²·Σ|h_k|²` under MRC, first path
/// only under single-antenna combining.
///
/// # Panics
/// If the draw has no envelopes.
pub fn instantaneous_snr(budget: &LinkBudget, draw: &ChannelDraw, combining: Combining) -> f64 {
    assert!(!draw.envelopes.is_empty(), "channel draw without envelopes");
    let hp = draw.pointing_gain;
    match budget.technology {
        Technology::Fso => {
            let x = draw.envelopes[0] * hp;
            budget.mean_snr_linear * x * x
        }
        Technology::SubThz | Technology::MmWave => {
            let power = match combining {
                Combining::Mrc => draw.envelopes.iter().map(|h| h * h).sum::<f64>(),
                Combining::Single => draw.envelopes[0] * draw.envelopes[0],
            };
            budget.mean_snr_linear * hp * hp * power
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Fading {
    GammaGamma(GammaGamma),
    AlphaMu(AlphaMu),
    Nakagami(Nakagami),
}

impl Fading {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Fading::GammaGamma(d) => d.sample(rng),
            Fading::AlphaMu(d) => d.sample(rng),
            Fading::Nakagami(d) => d.sample(rng),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pointing {
    geometry: PointingGeometry,
    jitter_sigma: f64,
}

/// A ready-to-sample link: budget, fading model and pointing model.
#[derive(Debug, Clone)]
pub struct Link {
    pub budget: LinkBudget,
    /// Number of independent fading paths (1 for FSO).
    pub paths: usize,
    fading: Fading,
    pointing: Option<Pointing>,
}

impl Link {
    /// FSO hop of `distance` metres.
    pub fn fso(scenario: &Scenario, distance: f64) -> Result<Link> {
        let p = &scenario.fso;
        let (alpha, beta) = p.turbulence_shapes(distance)?;
        let h_l = fso_path_gain(p.visibility, p.wavelength, distance)?;
        let eta = p.conversion_coeff;
        let mean = scenario.service.tx_snr() * (eta * h_l).powi(2);
        Ok(Link {
            budget: LinkBudget {
                mean_snr_linear: mean,
                technology: Technology::Fso,
            },
            paths: 1,
            fading: Fading::GammaGamma(GammaGamma::new(alpha, beta)?),
            pointing: Some(Pointing {
                geometry: pointing_geometry(p.receiver_radius, p.beamwidth, p.jitter_sigma)?,
                jitter_sigma: p.jitter_sigma,
            }),
        })
    }

    /// Sub-THz hop of `distance` metres.
    pub fn subthz(scenario: &Scenario, distance: f64) -> Result<Link> {
        let p = &scenario.subthz;
        let gain = subthz_path_gain(
            p.frequency,
            distance,
            p.tx_gain_db,
            p.rx_gain_db,
            p.pressure,
            p.temperature,
            p.humidity,
        )?;
        Ok(Link {
            budget: LinkBudget {
                mean_snr_linear: scenario.service.tx_snr() * gain,
                technology: Technology::SubThz,
            },
            paths: (p.n_tx * p.n_rx) as usize,
            fading: Fading::AlphaMu(AlphaMu::new(p.alpha, p.mu)?),
            pointing: Some(Pointing {
                geometry: pointing_geometry(p.receiver_radius, p.beamwidth, p.jitter_sigma)?,
                jitter_sigma: p.jitter_sigma,
            }),
        })
    }

    /// mmWave access link of `distance` metres (slant range).
    pub fn mmwave(scenario: &Scenario, distance: f64) -> Result<Link> {
        let p = &scenario.mmwave;
        let gain = mmwave_path_gain(
            p.frequency,
            distance,
            p.tx_gain_db,
            p.rx_gain_db,
            p.oxygen_atten_db_per_km,
            p.rain_atten_db_per_km,
        )?;
        Ok(Link {
            budget: LinkBudget {
                mean_snr_linear: scenario.service.tx_snr() * gain,
                technology: Technology::MmWave,
            },
            paths: (p.n_tx * p.n_rx) as usize,
            fading: Fading::Nakagami(Nakagami::new(p.m, 1.0)?),
            pointing: None,
        })
    }

    /// Rayleigh-faded single-path RF link without pointing error; a reference
    /// channel with closed-form statistics.
    pub fn rayleigh(mean_snr_linear: f64) -> Link {
        Link {
            budget: LinkBudget {
                mean_snr_linear,
                technology: Technology::MmWave,
            },
            paths: 1,
            fading: Fading::Nakagami(Nakagami::new(1.0, 1.0).expect("valid shape")),
            pointing: None,
        }
    }

    pub fn technology(&self) -> Technology {
        self.budget.technology
    }

    /// Mean SNR scaled by `factor`; the fading model is unchanged.
    pub fn scaled(&self, factor: f64) -> Link {
        let mut l = self.clone();
        l.budget.mean_snr_linear *= factor;
        l
    }

    /// Draws every random factor: envelopes in path order, then pointing.
    pub fn sample_draw<R: Rng + ?Sized>(&self, rng: &mut R) -> ChannelDraw {
        let envelopes = (0..self.paths).map(|_| self.fading.sample(rng)).collect();
        let pointing_gain = match &self.pointing {
            Some(p) => sample_pointing(&p.geometry, p.jitter_sigma, rng),
            None => 1.0,
        };
        ChannelDraw {
            envelopes,
            pointing_gain,
        }
    }

    /// Same stream consumption and result as
    /// `instantaneous_snr(&self.budget, &self.sample_draw(rng), Combining::Mrc)`
    /// without allocating.
    #[inline]
    pub fn sample_snr<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut power = 0.0;
        if self.budget.technology == Technology::Fso {
            let i = self.fading.sample(rng);
            power = i * i;
        } else {
            for _ in 0..self.paths {
                let h = self.fading.sample(rng);
                power += h * h;
            }
        }
        let hp = match &self.pointing {
            Some(p) => sample_pointing(&p.geometry, p.jitter_sigma, rng),
            None => 1.0,
        };
        self.budget.mean_snr_linear * hp * hp * power
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, v, "must be > 0"))
    }
}

fn non_negative(name: &'static str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, v, "must be >= 0"))
    }
}
