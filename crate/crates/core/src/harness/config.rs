//! TOML configuration for benchmark runs.
//!
//! Every section is optional; missing keys fall back to the built-in
//! problem. A complete file looks like:
//!
//! ```toml
//! measured_hz = [6.51, 16.37, 33.44, 33.97, 36.17, 49.41, 50.2, 55.61, 64.04, 69.39]
//!
//! [run]
//! algorithms = ["fss", "fssb", "pso", "ga"]
//! trials = 30
//! iters = 500
//! pop = 20
//! seed = 1
//! problem = "garteur"
//! truth_seed = 2024
//!
//! [mesh]
//! fuselage = 12
//! wing = 12
//! vertical_tail = 4
//! horizontal_tail = 4
//!
//! [bounds]
//! min_position = [2000.0, 7.3e-9, 7.3e-9, 7.3e-7, 3.0e-8, 7.3e-9, 7.3e-7, 3.0e-8]
//! max_position = [3000.0, 9.8e-9, 9.8e-9, 9.8e-7, 5.5e-8, 9.8e-9, 9.8e-7, 5.5e-8]
//! min_velocity = [-10.0, -5e-11, -5e-11, -5e-9, -5e-10, -5e-11, -5e-9, -5e-10]
//! max_velocity = [10.0, 5e-11, 5e-11, 5e-9, 5e-10, 5e-11, 5e-9, 5e-10]
//!
//! [fss]
//! step_ind_init = [30.0, 8e-11, 8e-11, 8e-9, 8e-10, 8e-11, 8e-9, 8e-10]
//! step_ind_final = [3.0, 8e-12, 8e-12, 8e-10, 8e-11, 8e-12, 8e-10, 8e-11]
//! step_vol_init = 0.08
//! step_vol_final = 0.06
//! w_scale = 250.0
//! beta = { local = 1.5, global = 2.0, default = 1.0 }
//!
//! [pso]
//! c1 = 2.0
//! c2 = 2.0
//!
//! [ga]
//! mutation_rate = 0.2
//! selection_rate = 0.5
//! elite_count = 1
//! blend_alpha = 0.5
//! mutation_scale = 0.05
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::benchmark::AlgorithmSettings;
use super::problem::{default_fss_settings, default_search_space, UpdatingProblem, MEASURED_HZ};
use crate::error::{Error, Result};
use crate::fem::{MeshConfig, ParameterVector};
use crate::fss::Beta;
use crate::ga::GaSettings;
use crate::optimizer::{Algorithm, SearchSpace};
use crate::pso::PsoSettings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    /// The measured frequency list.
    Garteur,
    /// Frequencies generated by the model at a random in-bounds vector.
    Surrogate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub algorithms: Vec<Algorithm>,
    pub trials: usize,
    pub iters: usize,
    pub pop: usize,
    /// First seed; trial `k` uses `seed + k`.
    pub seed: u64,
    pub problem: ProblemKind,
    pub truth_seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            trials: 30,
            iters: 500,
            pop: 20,
            seed: 1,
            problem: ProblemKind::Garteur,
            truth_seed: 2024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FssConfig {
    pub step_ind_init: Vec<f64>,
    pub step_ind_final: Vec<f64>,
    pub step_vol_init: f64,
    pub step_vol_final: f64,
    pub w_scale: f64,
    pub beta: Beta,
}

impl Default for FssConfig {
    fn default() -> Self {
        let s = default_fss_settings();
        Self {
            step_ind_init: s.step_ind_init,
            step_ind_final: s.step_ind_final,
            step_vol_init: s.step_vol_init,
            step_vol_final: s.step_vol_final,
            w_scale: s.w_scale,
            beta: s.beta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub measured_hz: Vec<f64>,
    pub initial: ParameterVector,
    pub bounds: SearchSpace,
    pub mesh: MeshConfig,
    pub fss: FssConfig,
    pub pso: PsoSettings,
    pub ga: GaSettings,
    pub run: RunConfig,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            measured_hz: MEASURED_HZ.to_vec(),
            initial: ParameterVector::INITIAL,
            bounds: default_search_space(),
            mesh: MeshConfig::default(),
            fss: FssConfig::default(),
            pso: PsoSettings::default(),
            ga: GaSettings::default(),
            run: RunConfig::default(),
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    /// The problem described by the measured list, bounds and mesh (before
    /// any surrogate substitution).
    pub fn problem(&self) -> Result<UpdatingProblem> {
        let problem = UpdatingProblem {
            measured_hz: self.measured_hz.clone(),
            search_space: self.bounds.clone(),
            initial_vector: self.initial,
            n_modes: self.measured_hz.len(),
            mesh: self.mesh,
        };
        problem.validate()?;
        Ok(problem)
    }

    pub fn algorithm_settings(&self) -> Result<AlgorithmSettings> {
        let mut settings = AlgorithmSettings { pso: self.pso, ga: self.ga, ..AlgorithmSettings::default() };
        settings.fss.step_ind_init = self.fss.step_ind_init.clone();
        settings.fss.step_ind_final = self.fss.step_ind_final.clone();
        settings.fss.step_vol_init = self.fss.step_vol_init;
        settings.fss.step_vol_final = self.fss.step_vol_final;
        settings.fss.w_scale = self.fss.w_scale;
        settings.fss.beta = self.fss.beta;
        settings.fss.validate(self.bounds.dim())?;
        settings.ga.validate(self.run.pop)?;
        Ok(settings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn module_doc_example_parses_to_defaults() {
        let doc = include_str!("config.rs");
        let toml: String = doc
            .lines()
            .skip_while(|l| !l.starts_with("//! ```toml"))
            .skip(1)
            .take_while(|l| !l.starts_with("//! ```"))
            .map(|l| l.trim_start_matches("//!").trim_start())
            .collect::<Vec<_>>()
            .join("\n");
        let parsed = Config::from_toml(&toml).unwrap();
        let defaults = Config::default();
        assert_eq!(parsed.run, defaults.run);
        assert_eq!(parsed.mesh, defaults.mesh);
        assert_eq!(parsed.measured_hz, defaults.measured_hz);
        for (a, b) in parsed.bounds.max_velocity().unwrap().iter().zip(defaults.bounds.max_velocity().unwrap()) {
            assert!((a - b).abs() <= 1e-15 * b.abs());
        }
        for (a, b) in parsed.fss.step_ind_final.iter().zip(&defaults.fss.step_ind_final) {
            assert!((a - b).abs() <= 1e-12 * b.abs());
        }
        parsed.problem().unwrap();
        parsed.algorithm_settings().unwrap();
    }

    #[test]
    fn partial_override() {
        let c = Config::from_toml("[run]\ntrials = 3\nproblem = \"surrogate\"\n[pso]\nc1 = 1.5\n").unwrap();
        assert_eq!(c.run.trials, 3);
        assert_eq!(c.run.problem, ProblemKind::Surrogate);
        assert_eq!(c.run.iters, 500);
        assert_eq!(c.pso.c1, 1.5);
        assert_eq!(c.pso.c2, 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::from_toml("[run]\ntrails = 3\n").is_err());
        assert!(Config::from_toml("[bounds]\nmin_position = [1.0]\nmax_position = [0.0]\n").is_err());
        let c = Config::from_toml("[fss]\nstep_ind_init = [1.0]\n").unwrap();
        assert!(c.algorithm_settings().is_err());
    }
}
