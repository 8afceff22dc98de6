//! Clear-air gaseous absorption from 1 to 450 GHz.
//!
//! A reduced line model: the 60 GHz oxygen complex is collapsed into seven
//! effective lines with first-order line mixing, plus the 118.75, 368.5 and
//! 424.8 GHz oxygen lines and six water-vapour lines, each with a
//! Van Vleck-Weisskopf shape and the usual dry/wet continua. Coefficients
//! were fitted against a full line-by-line reference; agreement is within a
//! few percent away from the band edges near 55 and 65 GHz.

/// Highest frequency (Hz) the model is valid for.
pub const MAX_FREQUENCY_HZ: f64 = 450e9;

const BAND_CENTRES: [f64; 7] = [53.6, 56.4, 58.5, 60.0, 61.5, 63.6, 66.4];
const BAND_STRENGTH: [f64; 7] = [0.1142, 1.219, 1.336, 0.6385, 1.358, 0.8963, 0.05177];
const BAND_MIXING: [f64; 7] = [3.0, 1.537, 1.34, 1.554, -2.125, -3.0, -3.0];
const BAND_TEMP_EXP: f64 = 0.8016;
const BAND_WIDTH: f64 = 0.009804;

/// (centre GHz, strength, temperature exponent, width, mixing, width exponent offset)
const OXYGEN_LINES: [(f64, f64, f64, f64, f64, f64); 3] = [
    (118.750343, 945e-6, 0.009, 16.30e-3, -0.031e-3, 0.0),
    (368.498350, 67.90e-6, 0.049, 19.20e-3, 0.0, 0.6),
    (424.763124, 638.00e-6, 0.044, 19.16e-3, 0.0, 0.6),
];

/// (centre GHz, strength, temperature exponent, dry width, dry width exponent,
/// self width, self width exponent)
const WATER_LINES: [(f64, f64, f64, f64, f64, f64, f64); 6] = [
    (22.2351, 0.1310e-13, 2.144, 0.0281 / 1.04, 0.69, 0.1349, 0.61),
    (183.3101, 0.2273e-11, 0.668, 0.0281, 0.64, 0.1491, 0.85),
    (321.2256, 0.8036e-13, 6.179, 0.023, 0.67, 0.108, 0.54),
    (325.1529, 0.2694e-11, 1.541, 0.0278, 0.68, 0.135, 0.74),
    (380.1974, 0.2438e-10, 1.048, 0.0287, 0.54, 0.1541, 0.89),
    (448.0011, 0.2562e-10, 1.405, 0.0263, 0.66, 0.1275, 0.67),
];

/// Atmospheric state for absorption calculations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atmosphere {
    /// Total pressure (hPa).
    pub pressure_hpa: f64,
    /// Temperature (K).
    pub temperature_k: f64,
    /// Water-vapour partial pressure (hPa).
    pub vapour_hpa: f64,
}

impl Atmosphere {
    /// Builds the state from total pressure (Pa), temperature (K) and
    /// relative humidity in [0, 1].
    pub fn from_humidity(pressure_pa: f64, temperature_k: f64, humidity: f64) -> Self {
        let p = pressure_pa / 100.0;
        Atmosphere {
            pressure_hpa: p,
            temperature_k,
            vapour_hpa: humidity * saturation_vapour_pressure(p, temperature_k),
        }
    }
}

/// Saturation vapour pressure over water (hPa), Buck's formula with the
/// enhancement factor.
pub fn saturation_vapour_pressure(pressure_hpa: f64, temperature_k: f64) -> f64 {
    let tc = temperature_k - 273.15;
    6.1121 * (17.502 * tc / (tc + 240.97)).exp() * (1.0007 + 3.46e-6 * pressure_hpa)
}

fn vvw_mixed(f: f64, f0: f64, width: f64, mixing: f64) -> f64 {
    let lo = f0 - f;
    let hi = f0 + f;
    (width - lo * mixing) / (lo * lo + width * width) + (width - hi * mixing) / (hi * hi + width * width)
}

/// Oxygen specific attenuation (dB/km) at `f_ghz`.
pub fn oxygen_db_per_km(f_ghz: f64, atm: &Atmosphere) -> f64 {
    let th = 300.0 / atm.temperature_k;
    let pd = 0.1 * (atm.pressure_hpa - atm.vapour_hpa);
    let pw = 0.1 * atm.vapour_hpa;
    let f = f_ghz;

    let width = BAND_WIDTH * (pd * th.powf(0.8) + 1.1 * pw * th);
    let mut band = 0.0;
    for i in 0..7 {
        let mix = BAND_MIXING[i] * 1e-3 * pd * th.powf(0.8);
        band += BAND_STRENGTH[i] * vvw_mixed(f, BAND_CENTRES[i], width, mix);
    }
    band *= (BAND_TEMP_EXP * (1.0 - th)).exp() * 1e-4;

    let mut lines = 0.0;
    for &(f0, s, a3, w, mix, a4) in &OXYGEN_LINES {
        let lw = w * (pd * th.powf(0.8 - a4) + 1.1 * pw * th);
        lines += s / f0 * (a3 * (1.0 - th)).exp() * vvw_mixed(f, f0, lw, mix * pd * th.powf(0.8));
    }

    let ga = 5.6e-3 * (pd + 1.1 * pw) * th.powf(1.5);
    let nonres = 6.14e-4 / (ga * (1.0 + (f / ga).powi(2)))
        + 1.4e-10 * (1.0 - 1.2e-5 * f.powf(1.5)) * pd * th.powf(1.5);

    let mut gamma = 0.182 * f * f * pd * th * th * (th * (band + lines) + nonres);
    if f > 37.0 {
        gamma += 0.182 * 26e-10 * pd * pd * th.powi(3) * (f - 37.0).powf(1.8);
    }
    gamma
}

/// Water-vapour specific attenuation (dB/km) at `f_ghz`.
pub fn water_vapour_db_per_km(f_ghz: f64, atm: &Atmosphere) -> f64 {
    let th = 300.0 / atm.temperature_k;
    let pd = 0.1 * (atm.pressure_hpa - atm.vapour_hpa);
    let pw = 0.1 * atm.vapour_hpa;
    if pw <= 0.0 {
        return 0.0;
    }
    let f = f_ghz;
    let mut lines = 0.0;
    for &(f0, b1, b2, b3, b4, b5, b6) in &WATER_LINES {
        let width = b3 * pd * th.powf(b4) + b5 * pw * th.powf(b6);
        let strength = 1.8281089e14 * b1 / (f0 * f0) * (b2 * (1.0 - th)).exp();
        lines += strength * vvw_mixed(f, f0, width, 0.0);
    }
    let cont =
        1.3084 * 1.2957246e-6 * pd / th.sqrt() + 0.38467 * 4.2952193e-5 * f.powf(0.15) * pw * th.powi(4);
    0.182 * f * f * pw * th.powf(3.5) * (lines + cont)
}

/// Total gaseous specific attenuation (dB/km).
pub fn specific_attenuation_db_per_km(f_ghz: f64, atm: &Atmosphere) -> f64 {
    oxygen_db_per_km(f_ghz, atm) + water_vapour_db_per_km(f_ghz, atm)
}
