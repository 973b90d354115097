//! JSON formats, job routing, and text rendering for the `orbclass`
//! command-line tool.

pub mod error;
pub mod job;
pub mod schema;

pub use error::CliError;
pub use job::{run, run_command, Command, JobSpec, OutputFormat, Report};
pub use orbclass_core;
