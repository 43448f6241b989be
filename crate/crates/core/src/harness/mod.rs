//! The updating objective, trial/benchmark orchestration and file outputs.

pub mod benchmark;
pub mod config;
pub mod output;
pub mod problem;

pub use benchmark::{
    default_seeds, run_benchmark, run_trial, AlgorithmSettings, AlgorithmSummary, BenchmarkOutcome,
    BenchmarkSummary, TrialFailure,
};
pub use config::{Config, ProblemKind, RunConfig};
pub use output::{emit_outputs, write_params, write_trace};
pub use problem::{
    default_fss_settings, default_search_space, make_objective, mode_errors_percent, run_surrogate,
    total_error_percent, FemObjective, Surrogate, UpdatingProblem, MEASURED_HZ,
};
