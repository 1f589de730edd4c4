//! Configuration, persistence and run orchestration for the CLI.

pub mod config;
pub mod csv;
pub mod runner;
pub mod snapshot;
pub mod svg;

pub use config::{parse_config, InitialCondition, MonitorKind, RunConfig, SpectrumKind};
pub use runner::{execute, initial_field, load_config, resolve_output_dir, Command, Outcome};
pub use snapshot::{snapshot_read, snapshot_read_onto, snapshot_write};
