//! Front end for `emsurf-core`: group specs, reports, batch runs, the
//! on-disk cache, and external cross-checks.

pub mod batch;
pub mod cache;
pub mod crosscheck;
pub mod error;
pub mod groups;
pub mod report;
pub mod spec;

pub use error::{CliError, ExitCode, Result};
