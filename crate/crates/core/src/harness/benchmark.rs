//! Seeded trials and the repeated-trial benchmark protocol.

use serde::{Deserialize, Serialize};

use super::problem::{default_fss_settings, make_objective, mode_errors_percent, UpdatingProblem};
use crate::error::{Error, Result};
use crate::fem::ParameterVector;
use crate::fss::{Beta, FssSettings, School};
use crate::ga::{GaSettings, Population};
use crate::optimizer::{drive, trial_rng, Algorithm, Objective, RunRecord, RunSettings, SearchSpace};
use crate::pso::{PsoSettings, Swarm};

/// Per-algorithm settings for one benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSettings {
    /// Used for both FSS and FSSb; `bias_enabled` is set per algorithm.
    pub fss: FssSettings,
    pub pso: PsoSettings,
    pub ga: GaSettings,
}

impl Default for AlgorithmSettings {
    fn default() -> Self {
        Self { fss: default_fss_settings(), pso: PsoSettings::default(), ga: GaSettings::default() }
    }
}

impl AlgorithmSettings {
    /// Settings for an arbitrary box: individual steps at 3 % of each bound
    /// amplitude, everything else at its default.
    pub fn for_space(space: &SearchSpace) -> Self {
        Self { fss: FssSettings::proportional(space, 0.03), ..Self::default() }
    }

    pub fn fss_for(&self, algorithm: Algorithm) -> FssSettings {
        FssSettings { bias_enabled: algorithm == Algorithm::Fssb, ..self.fss.clone() }
    }

    pub fn with_beta(mut self, beta: Beta) -> Self {
        self.fss.beta = beta;
        self
    }
}

/// One seeded optimization of `objective` over `space`.
pub fn run_trial<O: Objective + ?Sized>(
    algorithm: Algorithm,
    objective: &O,
    space: &SearchSpace,
    settings: &AlgorithmSettings,
    run: &RunSettings,
) -> Result<RunRecord> {
    run.validate()?;
    if objective.dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), actual: objective.dim() });
    }
    let mut rng = trial_rng(run.seed);
    let n = run.population_size;
    match algorithm {
        Algorithm::Fss | Algorithm::Fssb => {
            let mut school = School::init(space, &settings.fss_for(algorithm), n, objective, &mut rng)?;
            drive(&mut school, run.max_iter, objective, &mut rng, run.seed)
        }
        Algorithm::Pso => {
            let mut swarm = Swarm::init(space, &settings.pso, n, objective, &mut rng)?;
            drive(&mut swarm, run.max_iter, objective, &mut rng, run.seed)
        }
        Algorithm::Ga => {
            let mut pop = Population::init(space, &settings.ga, n, objective, &mut rng)?;
            drive(&mut pop, run.max_iter, objective, &mut rng, run.seed)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub message: String,
}

/// Aggregates of one algorithm over its successful trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub trials: usize,
    pub failed: usize,
    pub mean_final_cost: f64,
    pub std_final_cost: f64,
    pub mean_initial_best_cost: f64,
    pub mean_initial_mean_cost: f64,
    pub mean_parameters: ParameterVector,
    pub mean_frequencies_hz: Vec<f64>,
    pub mean_mode_errors_percent: Vec<f64>,
    /// Mean best-so-far cost per iteration.
    pub mean_best_trace: Vec<f64>,
    /// Mean population-mean cost per iteration.
    pub mean_population_trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSummary {
    pub measured_hz: Vec<f64>,
    pub seeds: Vec<u64>,
    pub population_size: usize,
    pub max_iter: usize,
    pub algorithms: Vec<AlgorithmSummary>,
    pub failures: Vec<TrialFailure>,
}

impl BenchmarkSummary {
    pub fn get(&self, algorithm: Algorithm) -> Option<&AlgorithmSummary> {
        self.algorithms.iter().find(|s| s.algorithm == algorithm)
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutcome {
    pub summary: BenchmarkSummary,
    pub records: Vec<RunRecord>,
}

/// Seeds `first..first + trials`.
pub fn default_seeds(first: u64, trials: usize) -> Vec<u64> {
    (first..first + trials as u64).collect()
}

fn mean_of(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn columnwise_mean(rows: &[Vec<f64>]) -> Vec<f64> {
    let Some(first) = rows.first() else { return Vec::new() };
    (0..first.len()).map(|c| rows.iter().map(|r| r[c]).sum::<f64>() / rows.len() as f64).collect()
}

/// Runs every algorithm once per seed on `problem` and aggregates.
///
/// Failed trials are listed in the summary and left out of the aggregates.
pub fn run_benchmark(
    problem: &UpdatingProblem,
    algorithms: &[Algorithm],
    seeds: &[u64],
    settings: &AlgorithmSettings,
    population_size: usize,
    max_iter: usize,
) -> Result<BenchmarkOutcome> {
    if seeds.is_empty() {
        return Err(Error::InvalidSettings("at least one trial is required".into()));
    }
    let mut sorted = seeds.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSettings("seeds must be distinct".into()));
    }
    let objective = make_objective(problem)?;
    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut summaries = Vec::new();
    for &algorithm in algorithms {
        let mut mine = Vec::new();
        let mut failed = 0;
        for &seed in seeds {
            let run = RunSettings { population_size, max_iter, seed };
            match run_trial(algorithm, &objective, &problem.search_space, settings, &run) {
                Ok(r) => mine.push(r),
                Err(e) => {
                    failed += 1;
                    failures.push(TrialFailure { algorithm, seed, message: e.to_string() });
                }
            }
        }
        if let Some(summary) = summarize(algorithm, &mine, failed, &objective)? {
            summaries.push(summary);
        }
        records.extend(mine);
    }
    Ok(BenchmarkOutcome {
        summary: BenchmarkSummary {
            measured_hz: problem.measured_hz.clone(),
            seeds: seeds.to_vec(),
            population_size,
            max_iter,
            algorithms: summaries,
            failures,
        },
        records,
    })
}

fn summarize(
    algorithm: Algorithm,
    records: &[RunRecord],
    failed: usize,
    objective: &super::problem::FemObjective,
) -> Result<Option<AlgorithmSummary>> {
    if records.is_empty() {
        return Ok(None);
    }
    let finals: Vec<f64> = records.iter().map(RunRecord::final_cost).collect();
    let mean_final = mean_of(&finals);
    let var = finals.iter().map(|c| (c - mean_final).powi(2)).sum::<f64>() / finals.len() as f64;
    let mut freqs = Vec::with_capacity(records.len());
    let mut errors = Vec::with_capacity(records.len());
    for r in records {
        let f = objective.frequencies(&r.best_position)?.frequencies_hz;
        errors.push(mode_errors_percent(objective.measured_hz(), &f)?);
        freqs.push(f);
    }
    let positions: Vec<Vec<f64>> = records.iter().map(|r| r.best_position.clone()).collect();
    Ok(Some(AlgorithmSummary {
        algorithm,
        trials: records.len(),
        failed,
        mean_final_cost: mean_final,
        std_final_cost: var.sqrt(),
        mean_initial_best_cost: mean_of(&records.iter().map(|r| r.initial_best_cost).collect::<Vec<_>>()),
        mean_initial_mean_cost: mean_of(&records.iter().map(|r| r.initial_mean_cost).collect::<Vec<_>>()),
        mean_parameters: ParameterVector::from_slice(&columnwise_mean(&positions))?,
        mean_frequencies_hz: columnwise_mean(&freqs),
        mean_mode_errors_percent: columnwise_mean(&errors),
        mean_best_trace: columnwise_mean(&records.iter().map(|r| r.best_cost.clone()).collect::<Vec<_>>()),
        mean_population_trace: columnwise_mean(&records.iter().map(|r| r.mean_cost.clone()).collect::<Vec<_>>()),
    }))
}
