//! Library surface of the command-line front end, kept separate from the
//! binary so that configs, presets, and the runner are testable directly.

pub mod config;
pub mod presets;
pub mod runner;

pub use config::{ExperimentConfig, Mode, ModelKind, SweepSpec};
pub use presets::{preset, PRESET_NAMES};
pub use runner::{compute_rows, data_rows, run_experiment, write_csv, Row, Value};
