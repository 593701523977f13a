//! Flat JSON configs, the `run | converge | entropy` commands and their output files.
//!
//! CSV files start with a header row; numbers carry 17 significant digits. Field dumps
//! are described by a `manifest.json` next to them (model, ic, s, λ, Δx, Δt, t, n).

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{cmd_converge, cmd_entropy, cmd_run, execute, exit_code, Command};
pub use config::{from_map, parse_config, parse_override, parse_override_value, Format, RunConfig};
pub use output::{fmt_num, FieldDump};
