//! Command-line front end for the `chiralpol` solvers: flat configuration
//! files, deterministic parameter scans and oracle regression runs, all
//! written as CSV.

pub mod config;
pub mod scans;
pub mod table;

pub use config::{Command, Config, ConfigError, RawConfig};
pub use scans::{
    cavity_points, loglog_slope, oracle_parameter_sets, run_oracle_suite, scan_cavity, scan_dispersion, scan_n, CavityPoint,
    OracleSuite, ScanError, XiAxis,
};
pub use table::{format_g17, Cell, ScanTable};
