//! Monte Carlo simulator for hybrid sub-THz + free-space-optical multi-hop
//! backhaul networks.
//!
//! - [`scenario`]: configuration types, reference defaults, text format.
//! - [`channels`]: turbulence, fading and pointing-error samplers.
//! - [`linkbudget`]: path gains and instantaneous SNR per technology.
//! - [`hybrid`]: hard switching, soft (hysteresis) switching and MRC.
//! - [`network`]: deployment modes, UE association, end-to-end outage.
//! - [`montecarlo`]: estimators, seeding, sweeps.
//!
//! The `parallel` feature (on by default) runs Monte Carlo batches on rayon;
//! results are identical with or without it.

// `!(x > 0.0)` style checks reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod error;
pub mod hybrid;
pub mod linkbudget;
pub mod montecarlo;
pub mod network;
pub mod scenario;

pub use error::{Error, Result};
pub use montecarlo::{Execution, McEstimate, Metric, Strategy};
pub use scenario::{load_scenario, table1_defaults, Scenario};
