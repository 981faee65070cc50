//! Sweep configuration, orchestration and serialization, plus the
//! reference-table harness.

pub mod config;
pub mod output;
pub mod run;
pub mod table1;

pub use config::{BetaGrid, Ensemble, Output, Spacing, SweepSpec};
pub use output::{format_number, from_json, render, rows_from_csv, to_csv, to_json, Format};
pub use run::{run_sweep, Row, RowError, SweepResult};
pub use table1::{table1_harness, table1_harness_with, Table1Report};
