//! Front end for the verification checks: parameter parsing, the report
//! record, and the config-driven full run.

pub mod checks;
pub mod config;
pub mod report;

pub use checks::{run_check, CheckId, CheckSpec, Params};
pub use config::{run_all, Config};
pub use report::{CheckReport, Status};
