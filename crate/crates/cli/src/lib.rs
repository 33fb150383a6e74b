//! Manifest parsing, command dispatch and report rendering for the `rbfam`
//! binary.

pub mod commands;
pub mod manifest;

pub use commands::{execute, run, CliError, Command, Format, Outcome, RunOptions};
pub use manifest::{parse_manifest, InputError, Kind, Manifest, Structure};
