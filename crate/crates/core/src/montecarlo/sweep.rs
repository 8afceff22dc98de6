//! One-dimensional parameter sweeps.

use std::fmt;
use std::str::FromStr;

use crate::channels::gg_shapes_from_rytov;
use crate::error::{Error, Result};
use crate::scenario::{Scenario, KEYS};

use super::exec::{point_key, Execution};
use super::{estimate_ergodic_rate, estimate_outage, estimate_switch_rate, McEstimate, Metric, Strategy};

/// The swept quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axis {
    /// UE position along the deployment line (m).
    UeDistance,
    /// Transmit SNR of every link (dB).
    TxSnrDb,
    /// FSO visibility (km).
    VisibilityKm,
    /// Beam radius of both the FSO and sub-THz links (m).
    BeamwidthM,
    /// Any numeric configuration key. Sweeping `fso.cn2` also re-derives
    /// the Gamma-Gamma shapes at the reference length, so turbulence
    /// strength changes on every hop.
    Key(String),
}

impl Axis {
    pub fn name(&self) -> &str {
        match self {
            Axis::UeDistance => "ue_distance",
            Axis::TxSnrDb => "tx_snr_db",
            Axis::VisibilityKm => "visibility_km",
            Axis::BeamwidthM => "beamwidth_m",
            Axis::Key(k) => k,
        }
    }

    /// Returns `base` with the axis set to `value`, validated.
    pub fn apply(&self, base: &Scenario, value: f64) -> Result<Scenario> {
        let mut s = base.clone();
        match self {
            Axis::UeDistance => s.geometry.ue_horizontal_distance = value,
            Axis::TxSnrDb => s.service.tx_snr_db = value,
            Axis::VisibilityKm => s.fso.visibility = value,
            Axis::BeamwidthM => {
                s.fso.beamwidth = value;
                s.subthz.beamwidth = value;
            }
            Axis::Key(k) => {
                let v = if value.fract() == 0.0 && value.abs() < 1e15 {
                    toml::Value::Integer(value as i64)
                } else {
                    toml::Value::Float(value)
                };
                s.set(k, &v)?;
                if k == "fso.cn2" {
                    let f = &mut s.fso;
                    (f.alpha_f, f.beta_f) =
                        gg_shapes_from_rytov(f.cn2, f.wavelength, f.shape_reference_length)?;
                }
            }
        }
        s.validate()?;
        Ok(s)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Axis> {
        Ok(match s {
            "ue_distance" => Axis::UeDistance,
            "tx_snr_db" => Axis::TxSnrDb,
            "visibility_km" => Axis::VisibilityKm,
            "beamwidth_m" => Axis::BeamwidthM,
            k if KEYS.contains(&k) && k != "network.hop_strategy" => Axis::Key(k.to_string()),
            _ => return Err(Error::Unsupported(format!("unknown sweep axis `{s}`"))),
        })
    }
}

/// `start, start + step, …` up to `stop` inclusive, with values rounded to
/// nine digits below the step's leading digit so that decimal grids print
/// cleanly.
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::Unsupported(format!(
            "invalid grid {start}:{stop}:{step}; need start <= stop and step > 0"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as u64;
    if n > 1_000_000 {
        return Err(Error::Unsupported("grid has more than 10^6 points".into()));
    }
    let scale = 10f64.powi(9 - step.log10().floor() as i32);
    Ok((0..=n)
        .map(|i| ((start + i as f64 * step) * scale).round() / scale)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    /// Strictly monotone axis values.
    pub points: Vec<f64>,
    pub trials_per_point: u64,
    pub seed: u64,
    pub strategies: Vec<Strategy>,
    pub metric: Metric,
    /// Steps per trace for the switch-rate metric. The number of traces is
    /// `trials_per_point / trace_length`, at least one.
    pub trace_length: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::Unsupported("sweep has no points".into()));
        }
        if self.points.iter().any(|p| !p.is_finite()) {
            return Err(Error::Unsupported("sweep points must be finite".into()));
        }
        let up = self.points.windows(2).all(|w| w[0] < w[1]);
        let down = self.points.windows(2).all(|w| w[0] > w[1]);
        if !(up || down) {
            return Err(Error::Unsupported(
                "sweep points must be strictly monotone".into(),
            ));
        }
        if self.trials_per_point == 0 {
            return Err(Error::Unsupported("trials per point must be >= 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::Unsupported("sweep has no strategies".into()));
        }
        if self.metric == Metric::SwitchRate && self.trace_length < 2 {
            return Err(Error::Unsupported("trace length must be >= 2".into()));
        }
        Ok(())
    }

    /// Points in ascending order.
    pub fn ascending_points(&self) -> Vec<f64> {
        let mut p = self.points.clone();
        p.sort_by(f64::total_cmp);
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub strategy: Strategy,
    pub estimate: McEstimate,
}

/// Evaluates every strategy at one axis value. The run key depends only on
/// the master seed and the axis value.
pub fn run_point(spec: &SweepSpec, base: &Scenario, value: f64, exec: Execution) -> Result<Vec<SweepRow>> {
    let scenario = spec.axis.apply(base, value)?;
    let key = point_key(spec.seed, value);
    spec.strategies
        .iter()
        .map(|st| {
            let estimate = match spec.metric {
                Metric::Outage => estimate_outage(&scenario, st, spec.trials_per_point, key, exec)?,
                Metric::Rate => estimate_ergodic_rate(&scenario, st, spec.trials_per_point, key, exec)?,
                Metric::SwitchRate => {
                    let traces = (spec.trials_per_point / spec.trace_length).max(1);
                    estimate_switch_rate(&scenario, st, spec.trace_length, traces, key, exec)?
                }
            };
            Ok(SweepRow {
                axis_value: value,
                strategy: *st,
                estimate,
            })
        })
        .collect()
}

/// All rows, axis ascending and strategies in declared order. Fails without
/// partial output if any point fails.
pub fn run_sweep(spec: &SweepSpec, base: &Scenario, exec: Execution) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.points.len() * spec.strategies.len());
    for p in spec.ascending_points() {
        rows.extend(run_point(spec, base, p, exec)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::table1_defaults;

    fn spec(points: Vec<f64>) -> SweepSpec {
        SweepSpec {
            axis: Axis::TxSnrDb,
            points,
            trials_per_point: 5000,
            seed: 11,
            strategies: vec!["hard".parse().unwrap(), "mrc".parse().unwrap()],
            metric: Metric::Outage,
            trace_length: 10_000,
        }
    }

    #[test]
    fn grid_counts() {
        assert_eq!(grid(0.0, 40.0, 2.0).unwrap().len(), 21);
        assert_eq!(grid(0.1, 1.0, 0.05).unwrap().len(), 19);
        assert_eq!(grid(0.1, 1.0, 0.05).unwrap()[3], 0.25);
        assert_eq!(grid(5.0, 5.0, 1.0).unwrap(), vec![5.0]);
        let strong = Axis::Key("fso.cn2".into())
            .apply(&table1_defaults(), 1e-12)
            .unwrap();
        let weak = Axis::Key("fso.cn2".into())
            .apply(&table1_defaults(), 1e-14)
            .unwrap();
        assert!((strong.fso.alpha_f - 4.343).abs() < 0.05 && (strong.fso.beta_f - 2.492).abs() < 0.05);
        assert!(weak.fso.alpha_f > strong.fso.alpha_f && weak.fso.beta_f > strong.fso.beta_f);
        let tiny = grid(1e-14, 1e-12, 1e-13).unwrap();
        assert_eq!((tiny.len(), tiny[0], tiny[2]), (10, 1e-14, 2.1e-13));
        assert!(grid(1.0, 0.0, 1.0).is_err());
        assert!(grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn axis_names() {
        for a in [
            "ue_distance",
            "tx_snr_db",
            "visibility_km",
            "beamwidth_m",
            "fso.cn2",
        ] {
            assert_eq!(a.parse::<Axis>().unwrap().name(), a);
        }
        assert!("colour".parse::<Axis>().is_err());
        assert!("network.hop_strategy".parse::<Axis>().is_err());
    }

    #[test]
    fn beamwidth_axis_sets_both_links() {
        let s = Axis::BeamwidthM.apply(&table1_defaults(), 0.3).unwrap();
        assert_eq!((s.fso.beamwidth, s.subthz.beamwidth), (0.3, 0.3));
        assert!(Axis::BeamwidthM.apply(&table1_defaults(), 0.0).is_err());
        let s = Axis::Key("subthz.n_tx".into())
            .apply(&table1_defaults(), 4.0)
            .unwrap();
        assert_eq!(s.subthz.n_tx, 4);
    }

    #[test]
    fn subset_reproduces_superset() {
        let base = table1_defaults();
        let full = run_sweep(&spec(vec![0.0, 10.0, 20.0]), &base, Execution::Sequential).unwrap();
        let one = run_sweep(&spec(vec![10.0]), &base, Execution::Sequential).unwrap();
        assert_eq!(&full[2..4], &one[..]);
    }

    #[test]
    fn rows_are_axis_ascending() {
        let base = table1_defaults();
        let rows = run_sweep(&spec(vec![20.0, 10.0]), &base, Execution::Sequential).unwrap();
        let xs: Vec<f64> = rows.iter().map(|r| r.axis_value).collect();
        assert_eq!(xs, vec![10.0, 10.0, 20.0, 20.0]);
    }

    #[test]
    fn invalid_specs() {
        assert!(spec(vec![]).validate().is_err());
        assert!(spec(vec![1.0, 1.0]).validate().is_err());
        assert!(spec(vec![1.0, 3.0, 2.0]).validate().is_err());
        let mut s = spec(vec![1.0]);
        s.trials_per_point = 0;
        assert!(s.validate().is_err());
    }
}
