//! Project-file driven front end for the `charcycle` library.

pub mod commands;
pub mod project;
pub mod report;
pub mod text;

pub use commands::{execute, Cli, Command, OutputFormat};
pub use project::Project;
pub use report::Report;
