use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nrpa_bench::{compare, run_experiment, ExperimentSpec, ProblemSpec};
use nrpa_core::tsptw::BiasSign;
use nrpa_core::weakschur::MoveRule;
use nrpa_core::{Algorithm, SearchConfig};

#[derive(Parser)]
#[command(
    name = "nrpa-bench",
    version,
    about = "Seed sweeps and anytime curves for NRPA, GNRPA and GNRPALR"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one search per seed and write raw.csv and curve.csv.
    Run(RunArgs),
    /// Compare the curves of two output directories.
    Compare { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemKind {
    Tsptw,
    Weakschur,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Nrpa,
    Gnrpa,
    Gnrpalr,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Pos,
    Neg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchurMoves {
    Selective,
    All,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    problem: ProblemKind,
    /// TSPTW instance file.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Number of Weak Schur parts.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "gnrpa")]
    algorithm: AlgorithmArg,
    #[arg(long, default_value_t = 3)]
    level: u32,
    /// Iterations per level (nrpa, gnrpa).
    #[arg(short = 'N', long = "iterations", default_value_t = 100)]
    iterations: u32,
    /// Repetition threshold per level (gnrpalr).
    #[arg(short = 'R', long = "repetitions", default_value_t = 0)]
    repetitions: u32,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Sign of the TSPTW distance bias.
    #[arg(long, value_enum, default_value = "neg")]
    bias_sign: SignArg,
    /// Weak Schur move generation.
    #[arg(long, value_enum, default_value = "selective")]
    schur_moves: SchurMoves,
    #[arg(long, default_value_t = 1)]
    seed_lo: u64,
    #[arg(long, default_value_t = 1)]
    seed_hi: u64,
    #[arg(long)]
    budget_seconds: f64,
    /// Per-level iteration cap for gnrpalr.
    #[arg(long)]
    iteration_cap: Option<u64>,
    /// Stop a seed once this score is reached.
    #[arg(long, allow_negative_numbers = true)]
    target: Option<f64>,
    /// Run a single top-level search instead of restarting until the budget expires.
    #[arg(long)]
    no_restart: bool,
    #[arg(long)]
    out: PathBuf,
}

impl RunArgs {
    fn spec(&self) -> Result<ExperimentSpec, String> {
        let problem = match self.problem {
            ProblemKind::Tsptw => {
                if self.k.is_some() {
                    return Err("--k only applies to --problem weakschur".into());
                }
                ProblemSpec::Tsptw {
                    instance: self
                        .instance
                        .clone()
                        .ok_or("--problem tsptw requires --instance")?,
                    bias_sign: match self.bias_sign {
                        SignArg::Pos => BiasSign::Positive,
                        SignArg::Neg => BiasSign::Negative,
                    },
                }
            }
            ProblemKind::Weakschur => {
                if self.instance.is_some() {
                    return Err("--instance only applies to --problem tsptw".into());
                }
                ProblemSpec::WeakSchur {
                    k: self.k.ok_or("--problem weakschur requires --k")?,
                    rule: match self.schur_moves {
                        SchurMoves::Selective => MoveRule::Selective,
                        SchurMoves::All => MoveRule::All,
                    },
                }
            }
        };
        let algorithm = match self.algorithm {
            AlgorithmArg::Nrpa => Algorithm::Nrpa,
            AlgorithmArg::Gnrpa => Algorithm::Gnrpa,
            AlgorithmArg::Gnrpalr => Algorithm::Gnrpalr,
        };
        if self.iteration_cap.is_some() && algorithm != Algorithm::Gnrpalr {
            return Err("--iteration-cap only applies to --algorithm gnrpalr".into());
        }
        let spec = ExperimentSpec {
            problem,
            config: SearchConfig {
                algorithm,
                level: self.level,
                iterations: self.iterations,
                repetitions: self.repetitions,
                alpha: self.alpha,
                iteration_cap: self.iteration_cap,
                restart: !self.no_restart,
                ..SearchConfig::default()
            },
            seed_lo: self.seed_lo,
            seed_hi: self.seed_hi,
            budget_seconds: self.budget_seconds,
            target: self.target,
            out: self.out.clone(),
            threads: None,
        };
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => {
            let spec = match args.spec() {
                Ok(spec) => spec,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            };
            match run_experiment(&spec) {
                Ok(report) => {
                    for run in &report.runs {
                        eprintln!(
                            "seed {:>4}  best {:>16}  playouts {:>12}  restarts {}",
                            run.seed,
                            run.best.score.display(report.score_decimals),
                            run.playouts,
                            run.restarts
                        );
                    }
                    eprintln!(
                        "wrote {} and {}",
                        report.raw_path.display(),
                        report.curve_path.display()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Command::Compare { a, b } => match compare(&a, &b) {
            Ok(table) => {
                print!("{table}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
    }
}
