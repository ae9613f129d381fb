//! Downlink simulator for a satellite / UAV-relay / ground-station network.
//!
//! Layers, bottom up: [`scenario`] geometry, [`channel`] propagation,
//! [`link`] budgets, [`combining`] receivers, [`association`] scoring,
//! [`amud`] placement and schemes, [`experiments`] sweeps and CSV.

pub mod amud;
pub mod association;
pub mod channel;
pub mod combining;
pub mod error;
pub mod experiments;
pub mod link;
pub mod numeric;
pub mod params;
pub mod rng;
pub mod scenario;
pub mod units;
pub mod workload;

pub use amud::{run_scheme, SchemeId, SchemeOutcome};
pub use error::{Error, Result};
pub use params::SimParams;
