use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fss_fem::fem::{build_garteur, model_frequencies, ParameterVector};
use fss_fem::harness::{
    default_seeds, emit_outputs, mode_errors_percent, run_benchmark, run_surrogate, total_error_percent, Config,
    ProblemKind, UpdatingProblem,
};
use fss_fem::{Algorithm, Error, Result};

/// Tune the aeroplane frame model to measured natural frequencies with
/// Fish School Search, PSO and a genetic algorithm.
#[derive(Debug, Parser)]
#[command(name = "fssfem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the repeated-trial benchmark and write trace.csv, summary.json
    /// and params.csv.
    Run(RunArgs),
    /// Print the model frequencies and errors for one parameter vector.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoArg {
    Fss,
    Fssb,
    Pso,
    Ga,
    All,
}

impl AlgoArg {
    fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgoArg::Fss => vec![Algorithm::Fss],
            AlgoArg::Fssb => vec![Algorithm::Fssb],
            AlgoArg::Pso => vec![Algorithm::Pso],
            AlgoArg::Ga => vec![Algorithm::Ga],
            AlgoArg::All => Algorithm::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProblemArg {
    Garteur,
    Surrogate,
}

#[derive(Debug, Args)]
struct Common {
    /// TOML configuration; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Debug: write the model mesh as JSON to this file.
    #[arg(long, value_name = "FILE")]
    dump_mesh: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    algo: Option<AlgoArg>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    pop: Option<usize>,
    /// First seed; trial k uses seed + k.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    problem: Option<ProblemArg>,
    /// Seed of the hidden parameter vector of the surrogate problem.
    #[arg(long)]
    truth_seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// TOML file with the eight parameters (rho, vtp_imin, l_imin, l_imax,
    /// l_itors, r_imin, r_imax, r_itors). Defaults to the initial vector.
    #[arg(long)]
    params: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

fn load_config(path: Option<&Path>) -> Result<Config> {
    path.map_or_else(|| Ok(Config::default()), Config::load)
}

fn dump_mesh(path: &Path, p: &ParameterVector, problem: &UpdatingProblem) -> Result<()> {
    let mesh = build_garteur(p, &problem.mesh)?;
    let json = serde_json::to_string_pretty(&mesh)?;
    std::fs::write(path, json).map_err(|e| Error::io(path, e))?;
    eprintln!("mesh with {} nodes and {} elements written to {}", mesh.nodes.len(), mesh.elements.len(), path.display());
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let mut config = load_config(args.common.config.as_deref())?;
    let r = &mut config.run;
    if let Some(a) = args.algo {
        r.algorithms = a.algorithms();
    }
    r.trials = args.trials.unwrap_or(r.trials);
    r.iters = args.iters.unwrap_or(r.iters);
    r.pop = args.pop.unwrap_or(r.pop);
    r.seed = args.seed.unwrap_or(r.seed);
    r.truth_seed = args.truth_seed.unwrap_or(r.truth_seed);
    if let Some(p) = args.problem {
        r.problem = match p {
            ProblemArg::Garteur => ProblemKind::Garteur,
            ProblemArg::Surrogate => ProblemKind::Surrogate,
        };
    }
    let run = config.run.clone();
    let settings = config.algorithm_settings()?;
    let mut problem = config.problem()?;
    if run.problem == ProblemKind::Surrogate {
        let surrogate = run_surrogate(&problem, run.truth_seed)?;
        eprintln!("surrogate truth: {:?}", surrogate.truth.to_array());
        problem = surrogate.problem;
    }
    if let Some(path) = &args.common.dump_mesh {
        dump_mesh(path, &problem.initial_vector, &problem)?;
    }

    let seeds = default_seeds(run.seed, run.trials);
    let outcome = run_benchmark(&problem, &run.algorithms, &seeds, &settings, run.pop, run.iters)?;
    let written = emit_outputs(&outcome.summary, &outcome.records, &args.out)?;

    println!("{:<6} {:>7} {:>12} {:>12} {:>12}", "algo", "trials", "initial", "final", "std");
    for s in &outcome.summary.algorithms {
        println!(
            "{:<6} {:>7} {:>12.4} {:>12.4} {:>12.4}",
            s.algorithm.as_str(),
            s.trials,
            s.mean_initial_mean_cost,
            s.mean_final_cost,
            s.std_final_cost
        );
    }
    for f in &outcome.summary.failures {
        eprintln!("trial failed: {} seed {}: {}", f.algorithm, f.seed, f.message);
    }
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let config = load_config(args.common.config.as_deref())?;
    let problem = config.problem()?;
    let p = match &args.params {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            toml::from_str::<ParameterVector>(&text)?
        }
        None => problem.initial_vector,
    };
    if let Some(path) = &args.common.dump_mesh {
        dump_mesh(path, &p, &problem)?;
    }
    let modes = model_frequencies(&p, problem.n_modes, &problem.mesh)?;
    let errors = mode_errors_percent(&problem.measured_hz, &modes.frequencies_hz)?;
    println!("{:>4} {:>12} {:>12} {:>9}", "mode", "measured", "model", "error %");
    for (i, ((m, f), e)) in problem.measured_hz.iter().zip(&modes.frequencies_hz).zip(&errors).enumerate() {
        println!("{:>4} {:>12.4} {:>12.4} {:>9.3}", i + 1, m, f, e);
    }
    println!("total error % {:.4}", total_error_percent(&problem.measured_hz, &modes.frequencies_hz)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Eval(args) => eval(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
