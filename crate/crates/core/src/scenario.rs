//! Scenario configuration: link parameters, deployment geometry and service
//! requirements, with the reference defaults and a flat `section.key = value`
//! text format.
//!
//! The text format is TOML restricted to dotted keys:
//!
//! ```text
//! fso.beamwidth = 0.40
//! subthz.n_tx = 2
//! network.hop_strategy = "hard"
//! ```
//!
//! Omitted keys take their default. Unknown keys are rejected.

use std::fmt::Write as _;

use crate::channels;
use crate::error::{Error, Result};
use crate::hybrid::SwitchThresholds;
use crate::network::HopStrategy;

/// Turbulence strength presets with their published Gamma-Gamma shapes at
/// the 200 m reference hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turbulence {
    /// C_n² = 1e-12 m^(-2/3), (α, β) = (4.343, 2.492).
    Strong,
    /// C_n² = 5e-13 m^(-2/3), (α, β) = (5.838, 4.249).
    Moderate,
}

impl Turbulence {
    pub fn cn2(self) -> f64 {
        match self {
            Turbulence::Strong => 1e-12,
            Turbulence::Moderate => 5e-13,
        }
    }

    pub fn shapes(self) -> (f64, f64) {
        match self {
            Turbulence::Strong => (4.343, 2.492),
            Turbulence::Moderate => (5.838, 4.249),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FsoLinkParams {
    /// Optical wavelength (m).
    pub wavelength: f64,
    /// Refractive-index structure parameter (m^(-2/3)).
    pub cn2: f64,
    /// Large-scale Gamma-Gamma shape at `shape_reference_length`.
    pub alpha_f: f64,
    /// Small-scale Gamma-Gamma shape at `shape_reference_length`.
    pub beta_f: f64,
    /// Hop length (m) at which `alpha_f`/`beta_f` apply. Other lengths derive
    /// their shapes from `cn2` through the Rytov variance.
    pub shape_reference_length: f64,
    /// Optical-to-electrical conversion coefficient.
    pub conversion_coeff: f64,
    /// Receiver aperture radius (m).
    pub receiver_radius: f64,
    /// Beam radius at the receiver (m).
    pub beamwidth: f64,
    /// Pointing jitter standard deviation per axis (m).
    pub jitter_sigma: f64,
    /// Meteorological visibility (km).
    pub visibility: f64,
}

impl Default for FsoLinkParams {
    fn default() -> Self {
        let (alpha_f, beta_f) = Turbulence::Strong.shapes();
        FsoLinkParams {
            wavelength: 1550e-9,
            cn2: Turbulence::Strong.cn2(),
            alpha_f,
            beta_f,
            shape_reference_length: 200.0,
            conversion_coeff: 1.0,
            receiver_radius: 0.20,
            beamwidth: 0.40,
            jitter_sigma: 0.05,
            visibility: 10.0,
        }
    }
}

impl FsoLinkParams {
    pub fn set_turbulence(&mut self, preset: Turbulence) {
        self.cn2 = preset.cn2();
        (self.alpha_f, self.beta_f) = preset.shapes();
    }

    /// Gamma-Gamma shapes for a hop of `distance` metres.
    pub fn turbulence_shapes(&self, distance: f64) -> Result<(f64, f64)> {
        if (distance - self.shape_reference_length).abs() <= 1e-9 * self.shape_reference_length {
            Ok((self.alpha_f, self.beta_f))
        } else {
            channels::gg_shapes_from_rytov(self.cn2, self.wavelength, distance)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubThzLinkParams {
    pub frequency: f64,
    pub tx_gain_db: f64,
    pub rx_gain_db: f64,
    /// Total air pressure (Pa).
    pub pressure: f64,
    /// Air temperature (K).
    pub temperature: f64,
    /// Relative humidity as a fraction in [0, 1].
    pub humidity: f64,
    /// α-µ nonlinearity.
    pub alpha: f64,
    /// α-µ cluster count.
    pub mu: f64,
    pub n_tx: u32,
    pub n_rx: u32,
    pub receiver_radius: f64,
    pub beamwidth: f64,
    pub jitter_sigma: f64,
}

impl Default for SubThzLinkParams {
    fn default() -> Self {
        SubThzLinkParams {
            frequency: 119e9,
            tx_gain_db: 55.0,
            rx_gain_db: 55.0,
            pressure: 101_325.0,
            temperature: 298.0,
            humidity: 0.5,
            alpha: 2.0,
            mu: 3.0,
            n_tx: 2,
            n_rx: 2,
            receiver_radius: 0.20,
            beamwidth: 0.50,
            jitter_sigma: 0.06,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MmWaveLinkParams {
    pub frequency: f64,
    pub tx_gain_db: f64,
    pub rx_gain_db: f64,
    pub rain_atten_db_per_km: f64,
    pub oxygen_atten_db_per_km: f64,
    /// Nakagami shape.
    pub m: f64,
    pub n_tx: u32,
    pub n_rx: u32,
}

impl Default for MmWaveLinkParams {
    fn default() -> Self {
        MmWaveLinkParams {
            frequency: 30e9,
            tx_gain_db: 40.0,
            rx_gain_db: 40.0,
            rain_atten_db_per_km: 0.0,
            oxygen_atten_db_per_km: 15.1,
            m: 1.0,
            n_tx: 2,
            n_rx: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    /// Height of donor and child nodes (m).
    pub node_height: f64,
    /// Length of one short backhaul hop (m).
    pub hop_length: f64,
    /// UE antenna height (m).
    pub ue_height: f64,
    /// UE position along the donor → node 2 line, measured from the donor (m).
    pub ue_horizontal_distance: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry {
            node_height: 60.0,
            hop_length: 200.0,
            ue_height: 0.0,
            ue_horizontal_distance: 0.0,
        }
    }
}

impl Geometry {
    /// 3-D slant distance from a node at `node_position` to the UE.
    pub fn access_distance(&self, node_position: f64) -> f64 {
        (self.node_height - self.ue_height).hypot(self.ue_horizontal_distance - node_position)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceParams {
    pub ues_per_node: u32,
    /// Spectral-efficiency requirement per UE (bps/Hz).
    pub rate_per_ue: f64,
    /// Transmit SNR applied to every link (dB).
    pub tx_snr_db: f64,
    /// Outage threshold for single-hop link studies (dB). When unset, the
    /// threshold of a node serving `ues_per_node` UEs is used.
    pub link_threshold_db: Option<f64>,
}

impl Default for ServiceParams {
    fn default() -> Self {
        ServiceParams {
            ues_per_node: 10,
            rate_per_ue: 0.1,
            tx_snr_db: 30.0,
            link_threshold_db: None,
        }
    }
}

impl ServiceParams {
    /// Linear outage threshold for single-hop link studies.
    pub fn link_threshold(&self) -> f64 {
        match self.link_threshold_db {
            Some(db) => db_to_linear(db),
            None => crate::network::node_threshold(self.ues_per_node, self.rate_per_ue),
        }
    }

    pub fn tx_snr(&self) -> f64 {
        db_to_linear(self.tx_snr_db)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkParams {
    /// Receiver strategy on backhaul hops that carry both links.
    pub hop_strategy: HopStrategy,
}

impl Default for NetworkParams {
    fn default() -> Self {
        NetworkParams {
            hop_strategy: HopStrategy::Hard,
        }
    }
}

/// Fully resolved simulation scenario. Immutable once loaded.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scenario {
    pub fso: FsoLinkParams,
    pub subthz: SubThzLinkParams,
    pub mmwave: MmWaveLinkParams,
    pub geometry: Geometry,
    pub service: ServiceParams,
    pub switching: SwitchThresholds,
    pub network: NetworkParams,
}

/// Reference parameter set.
pub fn table1_defaults() -> Scenario {
    Scenario::default()
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Parses configuration text and resolves it against the defaults.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| Error::Parse(e.to_string().trim_end().to_string()))?;
    let mut scenario = Scenario::default();
    let mut flat = Vec::new();
    flatten("", &table, &mut flat);
    for (key, value) in flat {
        scenario.set(&key, &value)?;
    }
    scenario.validate()?;
    Ok(scenario)
}

fn flatten(prefix: &str, table: &toml::Table, out: &mut Vec<(String, toml::Value)>) {
    for (k, v) in table {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            toml::Value::Table(t) => flatten(&key, t, out),
            other => out.push((key, other.clone())),
        }
    }
}

/// Every configuration key, in canonical order.
pub const KEYS: &[&str] = &[
    "fso.wavelength",
    "fso.cn2",
    "fso.alpha_f",
    "fso.beta_f",
    "fso.shape_reference_length",
    "fso.conversion_coeff",
    "fso.receiver_radius",
    "fso.beamwidth",
    "fso.jitter_sigma",
    "fso.visibility",
    "subthz.frequency",
    "subthz.tx_gain_db",
    "subthz.rx_gain_db",
    "subthz.pressure",
    "subthz.temperature",
    "subthz.humidity",
    "subthz.alpha",
    "subthz.mu",
    "subthz.n_tx",
    "subthz.n_rx",
    "subthz.receiver_radius",
    "subthz.beamwidth",
    "subthz.jitter_sigma",
    "mmwave.frequency",
    "mmwave.tx_gain_db",
    "mmwave.rx_gain_db",
    "mmwave.rain_atten_db_per_km",
    "mmwave.oxygen_atten_db_per_km",
    "mmwave.m",
    "mmwave.n_tx",
    "mmwave.n_rx",
    "geometry.node_height",
    "geometry.hop_length",
    "geometry.ue_height",
    "geometry.ue_horizontal_distance",
    "service.ues_per_node",
    "service.rate_per_ue",
    "service.tx_snr_db",
    "service.link_threshold_db",
    "switching.fso_upper_db",
    "switching.fso_lower_db",
    "switching.subthz_db",
    "network.hop_strategy",
];

enum Slot<'a> {
    Float(&'a mut f64),
    OptFloat(&'a mut Option<f64>),
    Count(&'a mut u32),
    Strategy(&'a mut HopStrategy),
}

impl Scenario {
    fn slot(&mut self, key: &str) -> Option<Slot<'_>> {
        use Slot::*;
        let s = self;
        Some(match key {
            "fso.wavelength" => Float(&mut s.fso.wavelength),
            "fso.cn2" => Float(&mut s.fso.cn2),
            "fso.alpha_f" => Float(&mut s.fso.alpha_f),
            "fso.beta_f" => Float(&mut s.fso.beta_f),
            "fso.shape_reference_length" => Float(&mut s.fso.shape_reference_length),
            "fso.conversion_coeff" => Float(&mut s.fso.conversion_coeff),
            "fso.receiver_radius" => Float(&mut s.fso.receiver_radius),
            "fso.beamwidth" => Float(&mut s.fso.beamwidth),
            "fso.jitter_sigma" => Float(&mut s.fso.jitter_sigma),
            "fso.visibility" => Float(&mut s.fso.visibility),
            "subthz.frequency" => Float(&mut s.subthz.frequency),
            "subthz.tx_gain_db" => Float(&mut s.subthz.tx_gain_db),
            "subthz.rx_gain_db" => Float(&mut s.subthz.rx_gain_db),
            "subthz.pressure" => Float(&mut s.subthz.pressure),
            "subthz.temperature" => Float(&mut s.subthz.temperature),
            "subthz.humidity" => Float(&mut s.subthz.humidity),
            "subthz.alpha" => Float(&mut s.subthz.alpha),
            "subthz.mu" => Float(&mut s.subthz.mu),
            "subthz.n_tx" => Count(&mut s.subthz.n_tx),
            "subthz.n_rx" => Count(&mut s.subthz.n_rx),
            "subthz.receiver_radius" => Float(&mut s.subthz.receiver_radius),
            "subthz.beamwidth" => Float(&mut s.subthz.beamwidth),
            "subthz.jitter_sigma" => Float(&mut s.subthz.jitter_sigma),
            "mmwave.frequency" => Float(&mut s.mmwave.frequency),
            "mmwave.tx_gain_db" => Float(&mut s.mmwave.tx_gain_db),
            "mmwave.rx_gain_db" => Float(&mut s.mmwave.rx_gain_db),
            "mmwave.rain_atten_db_per_km" => Float(&mut s.mmwave.rain_atten_db_per_km),
            "mmwave.oxygen_atten_db_per_km" => Float(&mut s.mmwave.oxygen_atten_db_per_km),
            "mmwave.m" => Float(&mut s.mmwave.m),
            "mmwave.n_tx" => Count(&mut s.mmwave.n_tx),
            "mmwave.n_rx" => Count(&mut s.mmwave.n_rx),
            "geometry.node_height" => Float(&mut s.geometry.node_height),
            "geometry.hop_length" => Float(&mut s.geometry.hop_length),
            "geometry.ue_height" => Float(&mut s.geometry.ue_height),
            "geometry.ue_horizontal_distance" => Float(&mut s.geometry.ue_horizontal_distance),
            "service.ues_per_node" => Count(&mut s.service.ues_per_node),
            "service.rate_per_ue" => Float(&mut s.service.rate_per_ue),
            "service.tx_snr_db" => Float(&mut s.service.tx_snr_db),
            "service.link_threshold_db" => OptFloat(&mut s.service.link_threshold_db),
            "switching.fso_upper_db" => Float(&mut s.switching.fso_upper_db),
            "switching.fso_lower_db" => Float(&mut s.switching.fso_lower_db),
            "switching.subthz_db" => Float(&mut s.switching.subthz_db),
            "network.hop_strategy" => Strategy(&mut s.network.hop_strategy),
            _ => return None,
        })
    }

    /// Overrides one key. Does not re-validate the scenario.
    pub fn set(&mut self, key: &str, value: &toml::Value) -> Result<()> {
        let bad = |message: &str| Error::BadValue {
            key: key.to_string(),
            message: message.to_string(),
        };
        let slot = self.slot(key).ok_or_else(|| Error::UnknownKey(key.to_string()))?;
        match slot {
            Slot::Float(f) => *f = as_float(value).ok_or_else(|| bad("expected a number"))?,
            Slot::OptFloat(f) => *f = Some(as_float(value).ok_or_else(|| bad("expected a number"))?),
            Slot::Count(n) => {
                let v = value.as_integer().ok_or_else(|| bad("expected an integer"))?;
                *n = u32::try_from(v).map_err(|_| bad("expected a non-negative integer"))?;
            }
            Slot::Strategy(h) => {
                let name = value.as_str().ok_or_else(|| bad("expected a string"))?;
                *h = name
                    .parse()
                    .map_err(|_| bad("expected one of \"hard\", \"mrc\""))?;
            }
        }
        Ok(())
    }

    /// Overrides one key from its textual value, as given on a command line.
    pub fn set_text(&mut self, key: &str, text: &str) -> Result<()> {
        let snippet = format!("v = {text}");
        let value = match snippet.parse::<toml::Table>() {
            Ok(t) => t["v"].clone(),
            Err(_) => toml::Value::String(text.to_string()),
        };
        self.set(key, &value)
    }

    /// Checks every invariant and reports the first violation.
    pub fn validate(&self) -> Result<()> {
        let f = &self.fso;
        positive("fso.wavelength", f.wavelength)?;
        positive("fso.cn2", f.cn2)?;
        positive("fso.alpha_f", f.alpha_f)?;
        positive("fso.beta_f", f.beta_f)?;
        positive("fso.shape_reference_length", f.shape_reference_length)?;
        positive("fso.conversion_coeff", f.conversion_coeff)?;
        positive("fso.receiver_radius", f.receiver_radius)?;
        positive("fso.beamwidth", f.beamwidth)?;
        non_negative("fso.jitter_sigma", f.jitter_sigma)?;
        positive("fso.visibility", f.visibility)?;

        let t = &self.subthz;
        positive("subthz.frequency", t.frequency)?;
        finite("subthz.tx_gain_db", t.tx_gain_db)?;
        finite("subthz.rx_gain_db", t.rx_gain_db)?;
        positive("subthz.pressure", t.pressure)?;
        positive("subthz.temperature", t.temperature)?;
        if !(0.0..=1.0).contains(&t.humidity) {
            return Err(Error::param("subthz.humidity", t.humidity, "must lie in [0, 1]"));
        }
        positive("subthz.alpha", t.alpha)?;
        positive("subthz.mu", t.mu)?;
        at_least_one("subthz.n_tx", t.n_tx)?;
        at_least_one("subthz.n_rx", t.n_rx)?;
        positive("subthz.receiver_radius", t.receiver_radius)?;
        positive("subthz.beamwidth", t.beamwidth)?;
        positive("subthz.jitter_sigma", t.jitter_sigma)?;

        let m = &self.mmwave;
        positive("mmwave.frequency", m.frequency)?;
        finite("mmwave.tx_gain_db", m.tx_gain_db)?;
        finite("mmwave.rx_gain_db", m.rx_gain_db)?;
        non_negative("mmwave.rain_atten_db_per_km", m.rain_atten_db_per_km)?;
        non_negative("mmwave.oxygen_atten_db_per_km", m.oxygen_atten_db_per_km)?;
        if !(m.m >= 0.5) || !m.m.is_finite() {
            return Err(Error::param("mmwave.m", m.m, "Nakagami shape must be >= 0.5"));
        }
        at_least_one("mmwave.n_tx", m.n_tx)?;
        at_least_one("mmwave.n_rx", m.n_rx)?;

        let g = &self.geometry;
        non_negative("geometry.node_height", g.node_height)?;
        non_negative("geometry.hop_length", g.hop_length)?;
        non_negative("geometry.ue_height", g.ue_height)?;
        non_negative("geometry.ue_horizontal_distance", g.ue_horizontal_distance)?;

        let s = &self.service;
        at_least_one("service.ues_per_node", s.ues_per_node)?;
        positive("service.rate_per_ue", s.rate_per_ue)?;
        finite("service.tx_snr_db", s.tx_snr_db)?;
        if let Some(th) = s.link_threshold_db {
            finite("service.link_threshold_db", th)?;
        }

        let w = &self.switching;
        finite("switching.fso_upper_db", w.fso_upper_db)?;
        finite("switching.fso_lower_db", w.fso_lower_db)?;
        finite("switching.subthz_db", w.subthz_db)?;
        if w.fso_upper_db < w.fso_lower_db {
            return Err(Error::param(
                "switching.fso_upper_db",
                w.fso_upper_db,
                "must be >= switching.fso_lower_db",
            ));
        }
        Ok(())
    }

    /// Canonical text form. `load_scenario(&s.to_config_text())` returns `s`.
    pub fn to_config_text(&self) -> String {
        let mut me = self.clone();
        let mut out = String::new();
        let mut section = "";
        for key in KEYS {
            let (sec, _) = key.split_once('.').expect("dotted key");
            if sec != section {
                if !section.is_empty() {
                    out.push('\n');
                }
                section = sec;
            }
            let rendered = match me.slot(key).expect("known key") {
                Slot::Float(f) => Some(render_float(*f)),
                Slot::OptFloat(f) => f.map(render_float),
                Slot::Count(n) => Some(n.to_string()),
                Slot::Strategy(h) => Some(format!("\"{h}\"")),
            };
            if let Some(v) = rendered {
                let _ = writeln!(out, "{key} = {v}");
            }
        }
        out
    }
}

fn render_float(x: f64) -> String {
    // Debug formatting is the shortest representation that round-trips.
    let s = format!("{x:?}");
    if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}

fn as_float(v: &toml::Value) -> Option<f64> {
    match v {
        toml::Value::Float(f) => Some(*f),
        toml::Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

fn finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, v, "must be finite"))
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

fn at_least_one(name: &'static str, v: u32) -> Result<()> {
    if v >= 1 {
        Ok(())
    } else {
        Err(Error::param(name, v as f64, "must be >= 1"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_defaults() {
        assert_eq!(load_scenario("").unwrap(), table1_defaults());
    }

    #[test]
    fn reference_values() {
        let s = table1_defaults();
        assert_eq!((s.fso.alpha_f, s.fso.beta_f), (4.343, 2.492));
        assert_eq!(s.fso.cn2, 1e-12);
        assert_eq!(s.fso.wavelength, 1550e-9);
        assert_eq!(s.subthz.frequency, 119e9);
        assert_eq!((s.subthz.tx_gain_db, s.subthz.rx_gain_db), (55.0, 55.0));
        assert_eq!(s.mmwave.oxygen_atten_db_per_km, 15.1);
        assert_eq!(s.mmwave.rain_atten_db_per_km, 0.0);
        assert_eq!((s.subthz.alpha, s.subthz.mu), (2.0, 3.0));
        assert_eq!(s.geometry.node_height, 60.0);
        assert_eq!(s.service.ues_per_node, 10);
        assert_eq!(s.service.rate_per_ue, 0.1);
        assert_eq!(s.switching.fso_upper_db, 6.0);
        assert_eq!(s.switching.fso_lower_db, 4.0);
        assert_eq!(s.switching.subthz_db, 5.0);
        assert_eq!(Turbulence::Moderate.shapes(), (5.838, 4.249));
    }

    #[test]
    fn single_override() {
        let s = load_scenario("subthz.beamwidth = 0.40\n").unwrap();
        let mut expected = table1_defaults();
        expected.subthz.beamwidth = 0.40;
        assert_eq!(s, expected);
    }

    #[test]
    fn section_tables_are_accepted() {
        let s = load_scenario("[fso]\nvisibility = 2\n").unwrap();
        assert_eq!(s.fso.visibility, 2.0);
    }

    #[test]
    fn negative_jitter_names_field() {
        let err = load_scenario("fso.jitter_sigma = -0.01").unwrap_err();
        assert_eq!(err.key(), Some("fso.jitter_sigma"));
        assert!(err.to_string().contains("jitter_sigma"));
    }

    #[test]
    fn unknown_key_is_rejected() {
        let err = load_scenario("fso.colour = 3").unwrap_err();
        assert_eq!(err, Error::UnknownKey("fso.colour".into()));
    }

    #[test]
    fn parse_error_mentions_line() {
        let err = load_scenario("fso.beamwidth = 0.4\nfso.visibility = = 3\n").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_type_is_rejected() {
        let err = load_scenario("subthz.n_tx = 1.5").unwrap_err();
        assert_eq!(err.key(), Some("subthz.n_tx"));
        let err = load_scenario("network.hop_strategy = \"soft\"").unwrap_err();
        assert_eq!(err.key(), Some("network.hop_strategy"));
    }

    #[test]
    fn zero_beamwidth_is_invalid() {
        let err = load_scenario("fso.beamwidth = 0").unwrap_err();
        assert_eq!(err.key(), Some("fso.beamwidth"));
    }

    #[test]
    fn hysteresis_order_enforced() {
        let err = load_scenario("switching.fso_upper_db = 3").unwrap_err();
        assert_eq!(err.key(), Some("switching.fso_upper_db"));
    }

    #[test]
    fn defaults_round_trip() {
        let s = table1_defaults();
        assert_eq!(load_scenario(&s.to_config_text()).unwrap(), s);
    }

    #[test]
    fn set_text_accepts_numbers_and_words() {
        let mut s = table1_defaults();
        s.set_text("fso.visibility", "0.5").unwrap();
        s.set_text("network.hop_strategy", "mrc").unwrap();
        assert_eq!(s.fso.visibility, 0.5);
        assert_eq!(s.network.hop_strategy, HopStrategy::Mrc);
    }

    #[test]
    fn slant_distance() {
        let g = Geometry {
            ue_horizontal_distance: 80.0,
            ..Geometry::default()
        };
        assert!((g.access_distance(0.0) - 100.0).abs() < 1e-12);
        assert!((g.access_distance(80.0) - 60.0).abs() < 1e-12);
    }

    #[test]
    fn reference_hop_uses_configured_shapes() {
        let f = FsoLinkParams::default();
        assert_eq!(f.turbulence_shapes(200.0).unwrap(), (4.343, 2.492));
        let (a, b) = f.turbulence_shapes(400.0).unwrap();
        assert!(a < 4.343 && b < 2.492);
    }
}
