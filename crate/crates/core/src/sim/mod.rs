//! Scenario configuration, seed derivation, runners and reports.

pub mod config;
pub mod report;
pub mod run;
pub mod seed;
pub mod table1;

pub use config::{concatenated_code_rate, Mode, ScenarioConfig};
pub use report::{
    render_scatter_csv, CodedStats, Report, ScenarioResult, SCATTER_CSV_HEADER, SWEEP_CSV_HEADER,
};
pub use run::{run_coded_scenario, run_uncoded_scenario, scatter_points, sweep_curve};
pub use seed::{derive_seed, substream, Lane};
pub use table1::{run_table1, Table1Campaign, Table1Row, TABLE1_ROWS, TABLE1_SYMBOLS};
