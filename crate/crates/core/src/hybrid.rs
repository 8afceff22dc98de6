//! Receiver strategies over a parallel sub-THz + FSO hop: hard switching,
//! hysteresis (soft) switching and maximum ratio combining.
//!
//! SNRs are linear; thresholds are configured in dB.

use std::fmt;
use std::str::FromStr;

use crate::scenario::db_to_linear;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActiveLink {
    Fso,
    SubThz,
}

impl fmt::Display for ActiveLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActiveLink::Fso => "fso",
            ActiveLink::SubThz => "subthz",
        })
    }
}

/// Soft-switching thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchThresholds {
    pub fso_upper_db: f64,
    pub fso_lower_db: f64,
    pub subthz_db: f64,
}

impl Default for SwitchThresholds {
    fn default() -> Self {
        SwitchThresholds {
            fso_upper_db: 6.0,
            fso_lower_db: 4.0,
            subthz_db: 5.0,
        }
    }
}

impl SwitchThresholds {
    fn linear(&self) -> (f64, f64, f64) {
        (
            db_to_linear(self.fso_upper_db),
            db_to_linear(self.fso_lower_db),
            db_to_linear(self.subthz_db),
        )
    }
}

/// Memory of the soft switcher.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HybridState {
    pub active: ActiveLink,
    pub switch_count: u64,
}

impl Default for HybridState {
    /// Starts on FSO with no switches.
    fn default() -> Self {
        HybridState {
            active: ActiveLink::Fso,
            switch_count: 0,
        }
    }
}

/// Picks the stronger link. Ties go to FSO.
pub fn hard_select(gamma_fso: f64, gamma_thz: f64) -> (ActiveLink, f64) {
    if gamma_fso >= gamma_thz {
        (ActiveLink::Fso, gamma_fso)
    } else {
        (ActiveLink::SubThz, gamma_thz)
    }
}

/// One step of the hysteresis switcher.
///
/// On FSO: stay while `γ_F ≥ lower`; below it move to sub-THz if
/// `γ_T ≥ subthz`, otherwise stay and report outage. On sub-THz: return to
/// FSO once `γ_F ≥ upper`; otherwise stay, reporting outage when
/// `γ_T < subthz`.
///
/// Returns the new state, the effective SNR of the link now active, and the
/// outage flag.
pub fn soft_step(
    state: HybridState,
    gamma_fso: f64,
    gamma_thz: f64,
    th: &SwitchThresholds,
) -> (HybridState, f64, bool) {
    let (upper, lower, thz) = th.linear();
    soft_step_linear(state, gamma_fso, gamma_thz, upper, lower, thz)
}

#[inline]
pub(crate) fn soft_step_linear(
    state: HybridState,
    gamma_fso: f64,
    gamma_thz: f64,
    upper: f64,
    lower: f64,
    thz: f64,
) -> (HybridState, f64, bool) {
    let switched = |active| HybridState {
        active,
        switch_count: state.switch_count + 1,
    };
    match state.active {
        ActiveLink::Fso => {
            if gamma_fso >= lower {
                (state, gamma_fso, false)
            } else if gamma_thz >= thz {
                (switched(ActiveLink::SubThz), gamma_thz, false)
            } else {
                (state, gamma_fso, true)
            }
        }
        ActiveLink::SubThz => {
            if gamma_fso >= upper {
                (switched(ActiveLink::Fso), gamma_fso, false)
            } else {
                (state, gamma_thz, gamma_thz < thz)
            }
        }
    }
}

/// Precomputed linear thresholds for tight loops.
#[derive(Debug, Clone, Copy)]
pub struct SoftSwitcher {
    upper: f64,
    lower: f64,
    thz: f64,
    pub state: HybridState,
}

impl SoftSwitcher {
    pub fn new(th: &SwitchThresholds) -> Self {
        let (upper, lower, thz) = th.linear();
        SoftSwitcher {
            upper,
            lower,
            thz,
            state: HybridState::default(),
        }
    }

    /// Advances one step; returns (effective SNR, outage flag).
    #[inline]
    pub fn step(&mut self, gamma_fso: f64, gamma_thz: f64) -> (f64, bool) {
        let (s, g, out) =
            soft_step_linear(self.state, gamma_fso, gamma_thz, self.upper, self.lower, self.thz);
        self.state = s;
        (g, out)
    }
}

/// Maximum ratio combining of the two links.
pub fn mrc_combine(gamma_fso: f64, gamma_thz: f64) -> f64 {
    gamma_fso + gamma_thz
}

/// True iff `effective_snr < threshold_snr`; equality is not an outage.
pub fn outage_decision(effective_snr: f64, threshold_snr: f64) -> bool {
    effective_snr < threshold_snr
}

/// Switch count of a hard switcher that starts on FSO.
pub fn count_switches_hard(trace: &[(f64, f64)]) -> u64 {
    let mut active = ActiveLink::Fso;
    let mut count = 0;
    for &(f, t) in trace {
        let (next, _) = hard_select(f, t);
        if next != active {
            count += 1;
            active = next;
        }
    }
    count
}

/// Switch count of a soft switcher that starts on FSO.
pub fn count_switches_soft(trace: &[(f64, f64)], th: &SwitchThresholds) -> u64 {
    let mut sw = SoftSwitcher::new(th);
    for &(f, t) in trace {
        sw.step(f, t);
    }
    sw.state.switch_count
}

/// Per-link receiver strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkStrategy {
    FsoOnly,
    SubThzOnly,
    Hard,
    Soft,
    Mrc,
}

impl LinkStrategy {
    pub const ALL: [LinkStrategy; 5] = [
        LinkStrategy::FsoOnly,
        LinkStrategy::SubThzOnly,
        LinkStrategy::Hard,
        LinkStrategy::Soft,
        LinkStrategy::Mrc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LinkStrategy::FsoOnly => "fso",
            LinkStrategy::SubThzOnly => "subthz",
            LinkStrategy::Hard => "hard",
            LinkStrategy::Soft => "soft",
            LinkStrategy::Mrc => "mrc",
        }
    }
}

impl fmt::Display for LinkStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LinkStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        LinkStrategy::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown link strategy `{s}`"))
    }
}
