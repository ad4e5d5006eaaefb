//! Configuration, orchestration and reporting for the `cartan` command line
//! tool.

pub mod builtins;
pub mod commands;
pub mod config;
pub mod replay;
pub mod report;

pub use commands::{cmd_check_cartan, cmd_counterexample, cmd_reproduce, cmd_validate, cmd_weyl, CommandError, ReproduceOptions};
pub use config::{load_config, parse_config, ConfigError, WorkbenchConfig};
pub use report::{emit_report, Format, Report};

/// Process exit codes.
pub mod exit {
    /// Every expectation met.
    pub const OK: i32 = 0;
    /// Some verdict differs from what was expected.
    pub const MISMATCH: i32 = 1;
    /// The configuration could not be used.
    pub const CONFIG: i32 = 2;
}
