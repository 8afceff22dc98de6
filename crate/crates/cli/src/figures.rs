//! Pinned parameter sets of the four figure studies.
//!
//! Each figure applies its overrides on top of the loaded configuration.

use backhaul_core::montecarlo::{grid, Axis, SweepSpec};
use backhaul_core::network::ModeId;
use backhaul_core::scenario::Turbulence;
use backhaul_core::{Metric, Result, Scenario, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// End-to-end outage of modes 1-7 versus UE position.
    Distance,
    /// Single-hop outage versus transmit SNR.
    Power,
    /// Ergodic rate versus FSO visibility.
    Visibility,
    /// Outage versus beamwidth at two hop lengths.
    Beamwidth,
}

impl Figure {
    pub const ALL: [Figure; 4] = [
        Figure::Distance,
        Figure::Power,
        Figure::Visibility,
        Figure::Beamwidth,
    ];

    pub fn command(self) -> &'static str {
        match self {
            Figure::Distance => "fig2-distance",
            Figure::Power => "fig3-power",
            Figure::Visibility => "fig4-visibility",
            Figure::Beamwidth => "fig5-beamwidth",
        }
    }

    pub fn metric(self) -> Metric {
        match self {
            Figure::Visibility => Metric::Rate,
            _ => Metric::Outage,
        }
    }

    /// Applies the figure's pinned parameters.
    pub fn scenario(self, base: &Scenario) -> Scenario {
        let mut s = base.clone();
        match self {
            Figure::Distance => s.fso.set_turbulence(Turbulence::Strong),
            Figure::Power => {
                s.fso.set_turbulence(Turbulence::Moderate);
                s.service.link_threshold_db = Some(5.0);
            }
            Figure::Visibility => s.fso.set_turbulence(Turbulence::Strong),
            Figure::Beamwidth => {
                s.fso.set_turbulence(Turbulence::Moderate);
                s.fso.receiver_radius = 0.1;
                s.fso.jitter_sigma = 0.12;
                s.subthz.receiver_radius = 0.1;
                s.subthz.jitter_sigma = 0.12;
                s.service.link_threshold_db = None;
            }
        }
        s
    }

    pub fn axis(self) -> Axis {
        match self {
            Figure::Distance => Axis::UeDistance,
            Figure::Power => Axis::TxSnrDb,
            Figure::Visibility => Axis::VisibilityKm,
            Figure::Beamwidth => Axis::BeamwidthM,
        }
    }

    pub fn points(self) -> Vec<f64> {
        let g = |a, b, c| grid(a, b, c).expect("static grid");
        match self {
            Figure::Distance => g(0.0, 400.0, 25.0),
            Figure::Power => g(0.0, 50.0, 2.0),
            Figure::Visibility => vec![0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0],
            // Narrower beams than the aperture radius see no pointing loss.
            Figure::Beamwidth => g(0.1, 1.0, 0.05),
        }
    }

    pub fn strategies(self) -> Vec<Strategy> {
        let parse = |names: &[&str]| {
            names
                .iter()
                .map(|n| n.parse().expect("static strategy"))
                .collect()
        };
        match self {
            Figure::Distance => ModeId::all().map(Strategy::Mode).collect(),
            Figure::Power | Figure::Visibility => parse(&["fso", "subthz", "hard", "soft", "mrc"]),
            Figure::Beamwidth => parse(&[
                "fso@200",
                "subthz@200",
                "hard@200",
                "mrc@200",
                "fso@400",
                "subthz@400",
                "hard@400",
                "mrc@400",
            ]),
        }
    }

    /// Scenario and sweep for this figure.
    pub fn plan(self, base: &Scenario, trials: u64, seed: u64) -> Result<(Scenario, SweepSpec)> {
        let scenario = self.scenario(base);
        scenario.validate()?;
        let spec = SweepSpec {
            axis: self.axis(),
            points: self.points(),
            trials_per_point: trials,
            seed,
            strategies: self.strategies(),
            metric: self.metric(),
            trace_length: DEFAULT_TRACE_LENGTH,
        };
        Ok((scenario, spec))
    }
}

pub const DEFAULT_TRACE_LENGTH: u64 = 10_000;

/// Default trials per point for a metric.
pub fn default_trials(metric: Metric) -> u64 {
    match metric {
        Metric::Outage | Metric::SwitchRate => 10_000_000,
        Metric::Rate => 100_000,
    }
}
