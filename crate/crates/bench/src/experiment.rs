use std::path::{Path, PathBuf};

use rayon::prelude::*;

use nrpa_core::tsptw::{parse_instance, BiasSign, Tsptw, TsptwInstance};
use nrpa_core::weakschur::{MoveRule, WeakSchur};
use nrpa_core::{run_search, AnytimeRecord, PlayoutResult, Problem, Score, SearchConfig};

use crate::clock::WallClock;
use crate::records::{self, CurvePoint};
use crate::BenchError;

/// Environment variable capping the number of seeds searched in parallel.
pub const THREADS_ENV: &str = "NPS_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSpec {
    Tsptw {
        instance: PathBuf,
        bias_sign: BiasSign,
    },
    WeakSchur {
        k: usize,
        rule: MoveRule,
    },
}

/// A seed sweep: one search per seed in `seed_lo..=seed_hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub problem: ProblemSpec,
    /// Search parameters; `seed` and `time_budget` are set per run.
    pub config: SearchConfig,
    pub seed_lo: u64,
    pub seed_hi: u64,
    pub budget_seconds: f64,
    /// Stop a seed once its best score reaches this value.
    pub target: Option<f64>,
    pub out: PathBuf,
    /// Worker count; `None` reads `NPS_THREADS`, then falls back to the
    /// number of cores.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SeedRun {
    pub seed: u64,
    pub records: Vec<AnytimeRecord>,
    pub best: PlayoutResult<usize>,
    pub playouts: u64,
    pub restarts: u64,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub runs: Vec<SeedRun>,
    pub score_decimals: u32,
    pub curve: Vec<CurvePoint>,
    pub raw_path: PathBuf,
    pub curve_path: PathBuf,
}

pub fn load_instance(path: &Path) -> Result<TsptwInstance, BenchError> {
    let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_instance(&text).map_err(|source| BenchError::Instance {
        path: path.to_owned(),
        source,
    })
}

/// Worker count from `NPS_THREADS`, defaulting to the number of cores.
pub fn worker_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

impl ExperimentSpec {
    fn seed_config(&self, seed: u64, decimals: u32) -> SearchConfig {
        let unit = 10f64.powi(decimals as i32);
        SearchConfig {
            seed,
            time_budget: Some(self.budget_seconds),
            target: self.target.map(|t| Score((t * unit).round() as i64)),
            ..self.config
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.seed_lo > self.seed_hi {
            return Err(BenchError::Spec(format!(
                "seed range {}..{} is empty",
                self.seed_lo, self.seed_hi
            )));
        }
        if !(self.budget_seconds.is_finite() && self.budget_seconds > 0.0) {
            return Err(BenchError::Spec(
                "budget must be a positive number of seconds".into(),
            ));
        }
        if self.target.is_some_and(|t| !t.is_finite()) {
            return Err(BenchError::Spec("target must be finite".into()));
        }
        self.seed_config(self.seed_lo, 0)
            .validate()
            .map_err(|e| BenchError::Spec(e.to_string()))
    }
}

fn sweep<P>(problem: &P, spec: &ExperimentSpec) -> Result<Vec<SeedRun>, BenchError>
where
    P: Problem<Move = usize> + Sync,
{
    let decimals = problem.score_decimals();
    let threads = spec.threads.unwrap_or_else(worker_threads);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?;
    pool.install(|| {
        (spec.seed_lo..=spec.seed_hi)
            .into_par_iter()
            .map(|seed| {
                let clock = WallClock::start();
                let out = run_search(problem, &spec.seed_config(seed, decimals), &clock)
                    .map_err(|source| BenchError::Search { seed, source })?;
                Ok(SeedRun {
                    seed,
                    records: out.records,
                    best: out.best,
                    playouts: out.playouts,
                    restarts: out.restarts,
                })
            })
            .collect()
    })
}

/// Runs every seed, then writes `raw.csv` and `curve.csv` into `spec.out`.
///
/// Seeds run in parallel; files are written once all seeds finished, in seed
/// order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport, BenchError> {
    spec.validate()?;
    let (runs, score_decimals) = match &spec.problem {
        ProblemSpec::Tsptw {
            instance,
            bias_sign,
        } => {
            let problem = Tsptw::new(load_instance(instance)?, *bias_sign);
            (sweep(&problem, spec)?, problem.score_decimals())
        }
        ProblemSpec::WeakSchur { k, rule } => {
            let problem = WeakSchur::new(*k, *rule).map_err(|e| BenchError::Spec(e.to_string()))?;
            (sweep(&problem, spec)?, problem.score_decimals())
        }
    };

    std::fs::create_dir_all(&spec.out).map_err(|source| BenchError::Io {
        path: spec.out.clone(),
        source,
    })?;
    let raw_path = spec.out.join("raw.csv");
    let curve_path = spec.out.join("curve.csv");
    records::write_raw(&raw_path, &runs, score_decimals)?;
    // The curve is built from the file as written so the two always agree.
    let raw = records::read_raw(&raw_path)?;
    let curve = records::curve(&raw, &records::checkpoints(spec.budget_seconds));
    records::write_curve(&curve_path, &curve)?;

    Ok(ExperimentReport {
        runs,
        score_decimals,
        curve,
        raw_path,
        curve_path,
    })
}
