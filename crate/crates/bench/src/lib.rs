//! Seed-sweep benchmark harness for the `nrpa-core` search engine.
//!
//! An experiment runs one search per seed under a wall-clock budget and
//! writes two files into its output directory:
//!
//! * `raw.csv`: one row per global-best improvement (`seed,elapsed,best_score,playouts`).
//! * `curve.csv`: mean best score over seeds at checkpoints 1, 2, 4, ... seconds
//!   up to the budget (`checkpoint,mean_best_score,seeds`).
//!
//! [`compare`] reads two such directories and reports the mean scores side by
//! side together with the empirical speedup to reach each score level.

mod clock;
mod compare;
mod experiment;
mod records;

pub use crate::clock::WallClock;
pub use crate::compare::{compare, Comparison, LevelSpeedup};
pub use crate::experiment::{
    load_instance, run_experiment, worker_threads, ExperimentReport, ExperimentSpec, ProblemSpec,
    SeedRun,
};
pub use crate::records::{
    checkpoints, curve, read_curve, read_raw, write_curve, write_raw, CurvePoint, RawRecord,
};

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Instance {
        path: PathBuf,
        source: nrpa_core::tsptw::ParseError,
    },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("invalid experiment: {0}")]
    Spec(String),
    #[error("seed {seed}: {source}")]
    Search {
        seed: u64,
        source: nrpa_core::SearchError,
    },
    #[error("curves have no checkpoint in common")]
    DisjointCheckpoints,
    #[error("cannot build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}
