//! File formats, run directories and the command line for `elastica-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod manifest;
pub mod run;
pub mod verify_report;

pub use error::{AppError, AppResult};
