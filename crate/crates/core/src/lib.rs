//! Capacity, mobile service and outage analysis for multi-antenna receivers
//! on a high-speed train passing a trackside base station.
//!
//! The train moves at constant speed past a base station located `d0` metres
//! from the track. Every antenna sees a purely distance-dependent SNR and the
//! receiver combines them with maximal-ratio combining, so every quantity in
//! this crate is deterministic.

pub mod analytic;
pub mod channel;
pub mod deployment;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod scenario;

pub use deployment::{Deployment, FixedIntervalLayout, Strategy};
pub use error::{Error, Result};
pub use scenario::{Scenario, ScenarioParams};
