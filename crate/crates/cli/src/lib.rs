//! Command-line front end for `desc-core`: generator and project files,
//! checks, syntheses and language utilities.

pub mod commands;
pub mod format;
pub mod project;

pub use commands::{CheckKind, Options, Status, SynthMode};
pub use project::Project;
