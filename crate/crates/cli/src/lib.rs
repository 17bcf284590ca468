//! Scenario runner for the thermometric machine: sweeps, presets, a
//! self-test and CSV/JSON export of result tables.

pub mod app;
pub mod error;
pub mod run;
pub mod scenario;
pub mod table;
pub mod verify;

pub use app::{build_scenario, execute, Cli, Command, OUT_DIR_ENV};
pub use error::CliError;
pub use run::{columns, run_scenario};
pub use scenario::{parse_seed, preset, Kind, Scenario, Settings, PRESETS};
pub use table::{Format, ResultTable};
