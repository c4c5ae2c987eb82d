//! Viscosity sweeps: configuration, orchestration, cross-viscosity reports
//! and file output.

mod compactness;
mod config;
mod emit;
mod oracle;
mod runner;
mod summary;

pub use compactness::{compactness_report, CompactnessReport};
pub use config::SweepConfig;
pub use emit::{
    dissipation_table, emit, emit_oracle, emit_run, read_json, read_summary, to_json_string,
    trajectory_file_name, write_json, write_trajectory_csv, OutputFormat, TRAJECTORY_COLUMNS,
};
pub use oracle::{atomization_oracle, log_log_slope, OracleRow, OracleSpec, OracleTable};
pub use runner::{run_sweep, sweep_data, SweepResult, Verdict};
pub use summary::{
    summarise, AuditSummary, ConcentrationCurve, ResidualSummary, RunSummary, TrajectoryRow,
    AUDIT_FROM,
};
