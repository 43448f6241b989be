//! The model-updating problem and its cost function.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fem::{MeshConfig, ModalResult, ParameterVector, ParametricModel};
use crate::fss::FssSettings;
use crate::optimizer::{trial_rng, uniform_init, Objective, SearchSpace};

/// Measured natural frequencies of the test structure, Hz.
pub const MEASURED_HZ: [f64; 10] = [6.51, 16.37, 33.44, 33.97, 36.17, 49.41, 50.2, 55.61, 64.04, 69.39];

/// Sum over modes of the percentage frequency error,
/// `sum 100 |measured_i - model_i| / measured_i`.
///
/// ```
/// use fss_fem::harness::total_error_percent;
///
/// let e = total_error_percent(&[10.0, 20.0], &[11.0, 19.0]).unwrap();
/// assert!((e - 15.0).abs() < 1e-12);
/// ```
pub fn total_error_percent(measured: &[f64], model: &[f64]) -> Result<f64> {
    Ok(mode_errors_percent(measured, model)?.iter().sum())
}

/// Per-mode percentage errors `100 |measured_i - model_i| / measured_i`.
pub fn mode_errors_percent(measured: &[f64], model: &[f64]) -> Result<Vec<f64>> {
    if measured.len() != model.len() {
        return Err(Error::DimensionMismatch { expected: measured.len(), actual: model.len() });
    }
    if let Some(bad) = measured.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(Error::InvalidFrequencies(format!("measured frequency {bad} must be positive")));
    }
    Ok(measured.iter().zip(model).map(|(m, f)| 100.0 * (m - f).abs() / m).collect())
}

/// Position and velocity bounds of the eight updated parameters.
pub fn default_search_space() -> SearchSpace {
    let min = vec![2000.0, 7.3e-9, 7.3e-9, 7.3e-7, 3.0e-8, 7.3e-9, 7.3e-7, 3.0e-8];
    let max = vec![3000.0, 9.8e-9, 9.8e-9, 9.8e-7, 5.5e-8, 9.8e-9, 9.8e-7, 5.5e-8];
    let vmax = vec![10.0, 0.05e-9, 0.05e-9, 0.05e-7, 0.05e-8, 0.05e-9, 0.05e-7, 0.05e-8];
    let vmin = vmax.iter().map(|v: &f64| -v).collect();
    SearchSpace::new(min, max)
        .and_then(|s| s.with_velocity(vmin, vmax))
        .expect("built-in bounds are valid")
}

/// Fish School Search steps for the eight updated parameters.
pub fn default_fss_settings() -> FssSettings {
    FssSettings::with_steps(vec![30.0, 0.08e-9, 0.08e-9, 0.08e-7, 0.08e-8, 0.08e-9, 0.08e-7, 0.08e-8])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpdatingProblem {
    pub measured_hz: Vec<f64>,
    pub search_space: SearchSpace,
    pub initial_vector: ParameterVector,
    pub n_modes: usize,
    pub mesh: MeshConfig,
}

impl Default for UpdatingProblem {
    fn default() -> Self {
        Self {
            measured_hz: MEASURED_HZ.to_vec(),
            search_space: default_search_space(),
            initial_vector: ParameterVector::INITIAL,
            n_modes: MEASURED_HZ.len(),
            mesh: MeshConfig::default(),
        }
    }
}

impl UpdatingProblem {
    pub fn validate(&self) -> Result<()> {
        if self.measured_hz.len() != self.n_modes || self.n_modes == 0 {
            return Err(Error::InvalidFrequencies(format!(
                "expected {} measured frequencies, got {}",
                self.n_modes,
                self.measured_hz.len()
            )));
        }
        if self.measured_hz.iter().any(|f| !(f.is_finite() && *f > 0.0)) {
            return Err(Error::InvalidFrequencies("measured frequencies must be positive".into()));
        }
        if self.measured_hz.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidFrequencies("measured frequencies must be ascending".into()));
        }
        if self.search_space.dim() != ParameterVector::DIM {
            return Err(Error::DimensionMismatch { expected: ParameterVector::DIM, actual: self.search_space.dim() });
        }
        self.mesh.validate()
    }
}

/// Total frequency error of the aeroplane model as a function of the
/// updating vector. Counts its evaluations.
#[derive(Debug)]
pub struct FemObjective {
    measured_hz: Vec<f64>,
    model: ParametricModel,
    evaluations: AtomicU64,
}

impl FemObjective {
    pub fn frequencies(&self, x: &[f64]) -> Result<ModalResult> {
        let p = ParameterVector::from_slice(x)?;
        self.model
            .frequencies(&p, self.measured_hz.len())
            .map_err(|e| Error::Objective { position: x.to_vec(), source: Box::new(e) })
    }

    pub fn measured_hz(&self) -> &[f64] {
        &self.measured_hz
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }
}

impl Objective for FemObjective {
    fn dim(&self) -> usize {
        ParameterVector::DIM
    }

    fn cost(&self, x: &[f64]) -> Result<f64> {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let modes = self.frequencies(x)?;
        total_error_percent(&self.measured_hz, &modes.frequencies_hz)
    }
}

pub fn make_objective(problem: &UpdatingProblem) -> Result<FemObjective> {
    problem.validate()?;
    Ok(FemObjective {
        measured_hz: problem.measured_hz.clone(),
        model: ParametricModel::new(problem.mesh)?,
        evaluations: AtomicU64::new(0),
    })
}

/// A synthetic problem whose measured data come from a known parameter vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Surrogate {
    pub problem: UpdatingProblem,
    pub truth: ParameterVector,
}

/// Samples a truth vector uniformly in the template's bounds and replaces
/// the measured frequencies by the model's own at that vector.
pub fn run_surrogate(template: &UpdatingProblem, truth_seed: u64) -> Result<Surrogate> {
    let mut rng = trial_rng(truth_seed);
    let x = uniform_init(&template.search_space, 1, &mut rng).remove(0);
    let truth = ParameterVector::from_slice(&x)?;
    let model = ParametricModel::new(template.mesh)?;
    let measured_hz = model.frequencies(&truth, template.n_modes)?.frequencies_hz;
    let problem = UpdatingProblem { measured_hz, ..template.clone() };
    problem.validate()?;
    Ok(Surrogate { problem, truth })
}
