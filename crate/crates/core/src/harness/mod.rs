//! Experiment configuration, batch execution, persistence, and table and
//! trajectory output.

mod config;
mod record;
mod runner;
mod table;
mod trajectory;

pub use config::{load_config, ConfigOverrides, ExperimentClass, ExperimentConfig, Instance};
pub use record::{load_records, sort_records, FinalMember, RunRecord, SCHEMA_VERSION};
pub use runner::{
    cell_seed, cells, reference_set, refset_file_name, run_cell, run_experiment, BatchOutcome,
    Cell, CellFailure,
};
pub use table::{
    format_mean_std, format_sci, infer_class, render_table, table_file_name, ComparisonTable,
    Tally, TableCell, TableRow, ALPHA,
};
pub use trajectory::{emit_trajectories, trajectory_file_name, TRAJECTORY_HEADER};
