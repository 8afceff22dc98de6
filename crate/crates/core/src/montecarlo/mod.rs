//! Monte Carlo estimators with reproducible seeding and confidence
//! intervals.
//!
//! Link-level strategies evaluate one FSO and one sub-THz link of the same
//! length; each trial draws the FSO link first, then the sub-THz link, from
//! the same stream whatever the strategy. Strategies run with the same seed
//! therefore see identical channel realisations.
//!
//! Soft switching is stateful: each batch of [`exec::BATCH_SIZE`] trials is
//! one block-fading trace that starts on FSO.

pub mod exec;
pub mod sweep;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hybrid::{
    count_switches_hard, hard_select, mrc_combine, outage_decision, LinkStrategy, SoftSwitcher,
};
use crate::linkbudget::Link;
use crate::network::{build_mode, E2eSampler, ModeId};
use crate::scenario::Scenario;

pub use exec::{Execution, BATCH_SIZE};
pub use sweep::{grid, run_point, run_sweep, Axis, SweepRow, SweepSpec};

/// Two-sided 95 % normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Estimates backed by fewer events than this are flagged.
pub const LOW_CONFIDENCE_EVENTS: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub trials: u64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    /// Event count behind a probability estimate.
    pub events: Option<u64>,
}

impl McEstimate {
    /// Proportion `events / trials` with a Wilson score interval.
    pub fn proportion(events: u64, trials: u64) -> McEstimate {
        assert!(trials >= 1 && events <= trials);
        let n = trials as f64;
        let p = events as f64 / n;
        McEstimate {
            value: p,
            trials,
            std_error: (p * (1.0 - p) / n).sqrt(),
            ci95: wilson(events, trials, Z95),
            events: Some(events),
        }
    }

    /// Sample mean with a normal interval.
    pub fn mean(stats: &Moments) -> McEstimate {
        assert!(stats.n >= 1);
        let var = if stats.n > 1 {
            stats.m2 / (stats.n - 1) as f64
        } else {
            0.0
        };
        let se = (var.max(0.0) / stats.n as f64).sqrt();
        McEstimate {
            value: stats.mean,
            trials: stats.n,
            std_error: se,
            ci95: (stats.mean - Z95 * se, stats.mean + Z95 * se),
            events: None,
        }
    }

    pub fn low_confidence(&self) -> bool {
        matches!(self.events, Some(k) if k < LOW_CONFIDENCE_EVENTS)
    }
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson(k: u64, n: u64, z: f64) -> (f64, f64) {
    let n_f = n as f64;
    let p = k as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let centre = (p + z2 / (2.0 * n_f)) / denom;
    let half = z * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt() / denom;
    // Clamp so the interval always contains p despite rounding.
    let lo = if k == 0 {
        0.0
    } else {
        (centre - half).max(0.0).min(p)
    };
    let hi = if k == n {
        1.0
    } else {
        (centre + half).min(1.0).max(p)
    };
    (lo, hi)
}

/// Running count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    #[inline]
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Chan et al. pairwise merge.
    pub fn merge(&self, other: &Moments) -> Moments {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * self.n as f64 * other.n as f64 / n as f64;
        Moments { n, mean, m2 }
    }
}

/// What a sweep evaluates at each point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    /// One hop carrying an FSO and a sub-THz link. `distance` defaults to
    /// `geometry.hop_length`.
    Link {
        kind: LinkStrategy,
        distance: Option<f64>,
    },
    /// End-to-end network outage of a deployment mode for a UE at
    /// `geometry.ue_horizontal_distance`.
    Mode(ModeId),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Link { kind, distance: None } => write!(f, "{kind}"),
            Strategy::Link {
                kind,
                distance: Some(d),
            } => write!(f, "{kind}@{d}"),
            Strategy::Mode(m) => write!(f, "{m}"),
        }
    }
}

/// Parses `fso`, `subthz`, `hard`, `soft`, `mrc`, optionally suffixed with
/// `@<metres>`, or `mode1` to `mode7`.
impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Strategy> {
        let bad = || Error::Unsupported(format!("unknown strategy `{s}`"));
        if let Some(id) = s.strip_prefix("mode") {
            let id: u8 = id.parse().map_err(|_| bad())?;
            return Ok(Strategy::Mode(ModeId::new(id).map_err(|_| bad())?));
        }
        let (name, distance) = match s.split_once('@') {
            Some((n, d)) => {
                let d: f64 = d.parse().map_err(|_| bad())?;
                if !(d > 0.0 && d.is_finite()) {
                    return Err(bad());
                }
                (n, Some(d))
            }
            None => (s, None),
        };
        let kind = name.parse::<LinkStrategy>().map_err(|_| bad())?;
        Ok(Strategy::Link { kind, distance })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Outage,
    /// Ergodic rate (bps/Hz).
    Rate,
    /// Link changes per step.
    SwitchRate,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Outage => "outage",
            Metric::Rate => "rate",
            Metric::SwitchRate => "switch_rate",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Metric> {
        match s {
            "outage" => Ok(Metric::Outage),
            "rate" => Ok(Metric::Rate),
            "switch_rate" => Ok(Metric::SwitchRate),
            _ => Err(Error::Unsupported(format!("unknown metric `{s}`"))),
        }
    }
}

/// The FSO and sub-THz links of one hop.
#[derive(Debug, Clone)]
pub struct LinkPair {
    pub fso: Link,
    pub thz: Link,
}

impl LinkPair {
    pub fn new(scenario: &Scenario, distance: f64) -> Result<LinkPair> {
        Ok(LinkPair {
            fso: Link::fso(scenario, distance)?,
            thz: Link::subthz(scenario, distance)?,
        })
    }

    /// Draws `(γ_FSO, γ_THz)`.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let f = self.fso.sample_snr(rng);
        let t = self.thz.sample_snr(rng);
        (f, t)
    }
}

fn link_pair(scenario: &Scenario, distance: Option<f64>) -> Result<LinkPair> {
    LinkPair::new(scenario, distance.unwrap_or(scenario.geometry.hop_length))
}

/// Effective SNR of a stateless link strategy.
#[inline]
fn stateless(kind: LinkStrategy, f: f64, t: f64) -> f64 {
    match kind {
        LinkStrategy::FsoOnly => f,
        LinkStrategy::SubThzOnly => t,
        LinkStrategy::Hard => hard_select(f, t).1,
        LinkStrategy::Mrc => mrc_combine(f, t),
        LinkStrategy::Soft => unreachable!("soft switching is stateful"),
    }
}

/// Outage probability of `strategy`.
///
/// Link strategies compare against `service.link_threshold()`, except soft
/// switching, which reports its own outage flag. Modes use the node
/// thresholds of the topology.
pub fn estimate_outage(
    scenario: &Scenario,
    strategy: &Strategy,
    trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate> {
    let counts = match *strategy {
        Strategy::Link { kind, distance } => {
            let pair = link_pair(scenario, distance)?;
            let th = scenario.service.link_threshold();
            let switching = scenario.switching;
            exec::map_batches(trials, BATCH_SIZE, seed, exec, |_, n, rng| {
                let mut k = 0u64;
                if kind == LinkStrategy::Soft {
                    let mut sw = SoftSwitcher::new(&switching);
                    for _ in 0..n {
                        let (f, t) = pair.sample(rng);
                        k += sw.step(f, t).1 as u64;
                    }
                } else {
                    for _ in 0..n {
                        let (f, t) = pair.sample(rng);
                        k += outage_decision(stateless(kind, f, t), th) as u64;
                    }
                }
                k
            })?
        }
        Strategy::Mode(mode) => {
            let topology = build_mode(mode, scenario)?;
            let sampler = E2eSampler::new(&topology, scenario, scenario.geometry.ue_horizontal_distance)?;
            exec::map_batches(trials, BATCH_SIZE, seed, exec, |_, n, rng| {
                (0..n).filter(|_| sampler.sample_outage(rng)).count() as u64
            })?
        }
    };
    Ok(McEstimate::proportion(counts.iter().sum(), trials))
}

/// Ergodic rate `E[log2(1 + γ_eff)]` of a link strategy.
pub fn estimate_ergodic_rate(
    scenario: &Scenario,
    strategy: &Strategy,
    trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate> {
    let (kind, distance) = match *strategy {
        Strategy::Link { kind, distance } => (kind, distance),
        Strategy::Mode(m) => return Err(Error::Unsupported(format!("ergodic rate is not defined for {m}"))),
    };
    let pair = link_pair(scenario, distance)?;
    let switching = scenario.switching;
    let parts = exec::map_batches(trials, BATCH_SIZE, seed, exec, |_, n, rng| {
        let mut m = Moments::default();
        let mut sw = SoftSwitcher::new(&switching);
        for _ in 0..n {
            let (f, t) = pair.sample(rng);
            let g = if kind == LinkStrategy::Soft {
                sw.step(f, t).0
            } else {
                stateless(kind, f, t)
            };
            m.push(g.ln_1p() / std::f64::consts::LN_2);
        }
        m
    })?;
    let total = parts.iter().fold(Moments::default(), |a, b| a.merge(b));
    Ok(McEstimate::mean(&total))
}

/// Outage probability of a single link against `threshold` (linear).
pub fn estimate_link_outage(
    link: &Link,
    threshold: f64,
    trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate> {
    let counts = exec::map_batches(trials, BATCH_SIZE, seed, exec, |_, n, rng| {
        (0..n)
            .filter(|_| outage_decision(link.sample_snr(rng), threshold))
            .count() as u64
    })?;
    Ok(McEstimate::proportion(counts.iter().sum(), trials))
}

/// Ergodic rate of a single link.
pub fn estimate_link_rate(link: &Link, trials: u64, seed: u64, exec: Execution) -> Result<McEstimate> {
    let parts = exec::map_batches(trials, BATCH_SIZE, seed, exec, |_, n, rng| {
        let mut m = Moments::default();
        for _ in 0..n {
            m.push(link.sample_snr(rng).ln_1p() / std::f64::consts::LN_2);
        }
        m
    })?;
    let total = parts.iter().fold(Moments::default(), |a, b| a.merge(b));
    Ok(McEstimate::mean(&total))
}

/// Mean link changes per step of a hard or soft switcher over `traces`
/// independent traces of `trace_length` i.i.d. block-fading steps.
pub fn estimate_switch_rate(
    scenario: &Scenario,
    strategy: &Strategy,
    trace_length: u64,
    traces: u64,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate> {
    let (kind, distance) = match *strategy {
        Strategy::Link {
            kind: k @ (LinkStrategy::Hard | LinkStrategy::Soft),
            distance,
        } => (k, distance),
        other => {
            return Err(Error::Unsupported(format!(
                "switch rate is defined for hard and soft switching, not {other}"
            )))
        }
    };
    if trace_length < 2 {
        return Err(Error::param("trace_length", trace_length as f64, "must be >= 2"));
    }
    let pair = link_pair(scenario, distance)?;
    let switching = scenario.switching;
    let total = traces
        .checked_mul(trace_length)
        .ok_or_else(|| Error::Unsupported("trace count overflows".into()))?;
    let rates = exec::map_batches(total, trace_length, seed, exec, |_, n, rng| {
        let trace: Vec<(f64, f64)> = (0..n).map(|_| pair.sample(rng)).collect();
        let switches = match kind {
            LinkStrategy::Hard => count_switches_hard(&trace),
            _ => crate::hybrid::count_switches_soft(&trace, &switching),
        };
        switches as f64 / n as f64
    })?;
    let mut m = Moments::default();
    for r in rates {
        m.push(r);
    }
    Ok(McEstimate::mean(&m))
}
