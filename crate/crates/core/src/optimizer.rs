//! Contracts shared by every optimizer: the search box, objectives, seeded
//! randomness, schedules and the per-trial record.
//!
//! All three algorithms minimize a non-negative cost. Randomness for one
//! trial flows through a single [`TrialRng`] that is consumed in a fixed
//! order: population initialization first, then per iteration in
//! individual-index order. Equal seeds therefore give bitwise-equal records.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator owned by one trial.
pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in `[lo, hi)`.
///
/// Used instead of `gen_range` so that degenerate or reversed intervals are
/// never rejected and the number of consumed words is always one.
#[inline]
pub fn uniform(rng: &mut TrialRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawSpace {
    min_position: Vec<f64>,
    max_position: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    min_velocity: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_velocity: Option<Vec<f64>>,
}

/// Axis-aligned box of admissible positions, plus optional symmetric
/// velocity limits used by the particle swarm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct SearchSpace {
    min_position: Vec<f64>,
    max_position: Vec<f64>,
    velocity: Option<(Vec<f64>, Vec<f64>)>,
}

impl SearchSpace {
    pub fn new(min_position: Vec<f64>, max_position: Vec<f64>) -> Result<Self> {
        if min_position.is_empty() {
            return Err(Error::InvalidSearchSpace("dimension must be positive".into()));
        }
        if min_position.len() != max_position.len() {
            return Err(Error::DimensionMismatch {
                expected: min_position.len(),
                actual: max_position.len(),
            });
        }
        for (d, (lo, hi)) in min_position.iter().zip(&max_position).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidSearchSpace(format!(
                    "dimension {d}: need finite min < max, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { min_position, max_position, velocity: None })
    }

    /// Attaches velocity limits. They must be symmetric about zero.
    pub fn with_velocity(mut self, min_velocity: Vec<f64>, max_velocity: Vec<f64>) -> Result<Self> {
        for v in [&min_velocity, &max_velocity] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), actual: v.len() });
            }
        }
        for (d, (lo, hi)) in min_velocity.iter().zip(&max_velocity).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidSearchSpace(format!(
                    "velocity dimension {d}: need finite min < max, got [{lo}, {hi}]"
                )));
            }
            if lo.abs() != *hi {
                return Err(Error::InvalidSearchSpace(format!(
                    "velocity dimension {d}: bounds [{lo}, {hi}] are not symmetric"
                )));
            }
        }
        self.velocity = Some((min_velocity, max_velocity));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.min_position.len()
    }

    pub fn min_position(&self) -> &[f64] {
        &self.min_position
    }

    pub fn max_position(&self) -> &[f64] {
        &self.max_position
    }

    pub fn min_velocity(&self) -> Option<&[f64]> {
        self.velocity.as_ref().map(|(lo, _)| lo.as_slice())
    }

    pub fn max_velocity(&self) -> Option<&[f64]> {
        self.velocity.as_ref().map(|(_, hi)| hi.as_slice())
    }

    /// Bound amplitude `max - min` of dimension `d`.
    pub fn width(&self, d: usize) -> f64 {
        self.max_position[d] - self.min_position[d]
    }

    pub fn widths(&self) -> Vec<f64> {
        (0..self.dim()).map(|d| self.width(d)).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.min_position.iter().zip(&self.max_position))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), actual: x.len() })
        }
    }

    /// Coerces each component into its bound interval; see [`clamp_to_bounds`].
    pub fn clamp(&self, x: &[f64]) -> Result<Vec<f64>> {
        clamp_to_bounds(x, self)
    }

    pub(crate) fn clamp_in_place(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.min_position).zip(&self.max_position) {
            *v = v.clamp(*lo, *hi);
        }
    }

    pub(crate) fn clamp_velocity_in_place(&self, v: &mut [f64]) {
        if let Some((lo, hi)) = &self.velocity {
            for ((c, lo), hi) in v.iter_mut().zip(lo).zip(hi) {
                *c = c.clamp(*lo, *hi);
            }
        }
    }
}

impl TryFrom<RawSpace> for SearchSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        let space = SearchSpace::new(raw.min_position, raw.max_position)?;
        match (raw.min_velocity, raw.max_velocity) {
            (None, None) => Ok(space),
            (Some(lo), Some(hi)) => space.with_velocity(lo, hi),
            _ => Err(Error::InvalidSearchSpace(
                "min_velocity and max_velocity must be given together".into(),
            )),
        }
    }
}

impl From<SearchSpace> for RawSpace {
    fn from(s: SearchSpace) -> Self {
        let (min_velocity, max_velocity) = match s.velocity {
            Some((lo, hi)) => (Some(lo), Some(hi)),
            None => (None, None),
        };
        RawSpace { min_position: s.min_position, max_position: s.max_position, min_velocity, max_velocity }
    }
}

/// Returns `x` with every component coerced into `[min_position[d], max_position[d]]`.
///
/// ```
/// use fss_fem::optimizer::{clamp_to_bounds, SearchSpace};
///
/// let space = SearchSpace::new(vec![2000.0], vec![3000.0]).unwrap();
/// assert_eq!(clamp_to_bounds(&[3500.0], &space).unwrap(), vec![3000.0]);
/// assert_eq!(clamp_to_bounds(&[2500.0], &space).unwrap(), vec![2500.0]);
/// ```
pub fn clamp_to_bounds(x: &[f64], space: &SearchSpace) -> Result<Vec<f64>> {
    space.check_dim(x)?;
    let mut out = x.to_vec();
    space.clamp_in_place(&mut out);
    Ok(out)
}

/// Draws `n` positions uniformly inside the box, dimension by dimension.
pub fn uniform_init(space: &SearchSpace, n: usize, rng: &mut TrialRng) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            space
                .min_position
                .iter()
                .zip(&space.max_position)
                .map(|(&lo, &hi)| uniform(rng, lo, hi))
                .collect()
        })
        .collect()
}

/// Linear interpolation from `start` (at `iter = 0`) to `end` (at `iter = max_iter`).
pub fn linear_schedule(start: f64, end: f64, iter: usize, max_iter: usize) -> Result<f64> {
    if max_iter == 0 {
        return Err(Error::ZeroMaxIter);
    }
    if iter > max_iter {
        return Err(Error::IterOutOfRange { iter, max_iter });
    }
    if iter == max_iter {
        return Ok(end);
    }
    Ok(start + (end - start) * iter as f64 / max_iter as f64)
}

/// A position with its cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub position: Vec<f64>,
    pub cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSettings {
    pub population_size: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self { population_size: 20, max_iter: 500, seed: 1 }
    }
}

impl RunSettings {
    pub fn validate(&self) -> Result<()> {
        if self.population_size == 0 {
            return Err(Error::InvalidSettings("population_size must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::ZeroMaxIter);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Fss,
    Fssb,
    Pso,
    Ga,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Fss, Algorithm::Fssb, Algorithm::Pso, Algorithm::Ga];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Fss => "fss",
            Algorithm::Fssb => "fssb",
            Algorithm::Pso => "pso",
            Algorithm::Ga => "ga",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fss" => Ok(Algorithm::Fss),
            "fssb" => Ok(Algorithm::Fssb),
            "pso" => Ok(Algorithm::Pso),
            "ga" => Ok(Algorithm::Ga),
            other => Err(Error::InvalidSettings(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Outcome of one seeded optimization trial.
///
/// `best_cost[t]` and `mean_cost[t]` describe the state after iteration `t`
/// (0-based); `best_cost` is the best-so-far and never increases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub initial_best_cost: f64,
    pub initial_mean_cost: f64,
    pub best_cost: Vec<f64>,
    pub mean_cost: Vec<f64>,
    pub best_position: Vec<f64>,
    pub evaluations: u64,
}

impl RunRecord {
    pub fn final_cost(&self) -> f64 {
        self.best_cost.last().copied().unwrap_or(self.initial_best_cost)
    }
}

/// A cost function to minimize over a box.
pub trait Objective {
    fn dim(&self) -> usize;

    /// Cost at `x`. Must be finite and non-negative for every in-bounds `x`.
    fn cost(&self, x: &[f64]) -> Result<f64>;
}

impl<O: Objective + ?Sized> Objective for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn cost(&self, x: &[f64]) -> Result<f64> {
        (**self).cost(x)
    }
}

/// Adapts a closure into an [`Objective`]. Positions of the wrong length
/// are rejected before the closure runs.
pub struct FnObjective<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> f64> FnObjective<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64]) -> f64> Objective for FnObjective<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn cost(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: x.len() });
        }
        Ok((self.f)(x))
    }
}

/// Evaluates `objective` at `x`, attaching the position to any failure.
pub(crate) fn evaluate<O: Objective + ?Sized>(objective: &O, x: &[f64], evaluations: &mut u64) -> Result<f64> {
    *evaluations += 1;
    match objective.cost(x) {
        Ok(c) if c.is_finite() => Ok(c),
        Ok(cost) => Err(Error::NonFiniteCost { cost, position: x.to_vec() }),
        Err(e @ Error::Objective { .. }) => Err(e),
        Err(e) => Err(Error::Objective { position: x.to_vec(), source: Box::new(e) }),
    }
}

/// One iterated population-based optimizer.
pub trait Optimizer {
    fn algorithm(&self) -> Algorithm;

    /// Runs iteration `iter` (0-based) of `max_iter`.
    fn step<O: Objective + ?Sized>(
        &mut self,
        iter: usize,
        max_iter: usize,
        objective: &O,
        rng: &mut TrialRng,
    ) -> Result<()>;

    /// Best candidate found so far.
    fn best(&self) -> &Candidate;

    /// Mean cost of the current population.
    fn mean_cost(&self) -> f64;

    fn evaluations(&self) -> u64;
}

/// Runs `max_iter` iterations of an already initialized optimizer and
/// records its trace.
pub fn drive<Opt, O>(
    optimizer: &mut Opt,
    max_iter: usize,
    objective: &O,
    rng: &mut TrialRng,
    seed: u64,
) -> Result<RunRecord>
where
    Opt: Optimizer,
    O: Objective + ?Sized,
{
    if max_iter == 0 {
        return Err(Error::ZeroMaxIter);
    }
    let initial_best_cost = optimizer.best().cost;
    let initial_mean_cost = optimizer.mean_cost();
    let mut best_cost = Vec::with_capacity(max_iter);
    let mut mean_cost = Vec::with_capacity(max_iter);
    for iter in 0..max_iter {
        optimizer.step(iter, max_iter, objective, rng)?;
        best_cost.push(optimizer.best().cost);
        mean_cost.push(optimizer.mean_cost());
    }
    Ok(RunRecord {
        algorithm: optimizer.algorithm(),
        seed,
        initial_best_cost,
        initial_mean_cost,
        best_cost,
        mean_cost,
        best_position: optimizer.best().position.clone(),
        evaluations: optimizer.evaluations(),
    })
}

pub(crate) fn mean(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    values.sum::<f64>() / n as f64
}
