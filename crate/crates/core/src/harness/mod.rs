//! Scenario files, end-to-end runs with their audit, the seeded benchmark
//! suite and SVG output.

mod bench;
mod run;
mod scenario;
mod svg;

use thiserror::Error;

use crate::agent::AgentError;
use crate::generators::GeneratorError;
use crate::oracle::OracleError;

pub use bench::{bench_row, run_bench, run_suite, suite_scenario, write_bench_csv, BenchRow, MAX_SUITE_OBSTACLES, SUITE_EXTENT};
pub use run::{cowpath_bound, hunt_scenario, run_scenario, Checks, RunReport, RunResult};
pub use scenario::{load_scenario, save_scenario, Scenario, ScenarioError, ScenarioMeta};
pub use svg::{render_svg, SvgOptions};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("agent: {0}")]
    Agent(#[from] AgentError),
    #[error("generator: {0}")]
    Generator(#[from] GeneratorError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o: {0}")]
    Io(String),
}
