//! Executable audits of the continuity, identity and inversion properties,
//! each returning a report with replayable witnesses on failure.

pub mod battery;
pub mod checks;
pub mod fixtures;
pub mod report;

pub use battery::{run_battery, BatteryConfig, BatteryOutcome};
pub use checks::*;
pub use report::{AuditReport, Witness};
