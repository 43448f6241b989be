//! Fish School Search.
//!
//! Each iteration swims the school through three movements and one feeding
//! phase, in this order:
//!
//! 1. **Individual movement**: every fish tries a random step of at most
//!    `step_ind` per dimension and keeps it only if its fitness improves.
//! 2. **Feeding**: weights grow by the normalized fitness gain of that step,
//!    `w_i += beta_i * df_i / max_j |df_j|`, clamped to `[1, w_scale]`.
//! 3. **Collective-instinctive movement**: the whole school drifts by the
//!    gain-weighted mean of the successful individual steps.
//! 4. **Collective-volitive movement**: if the school got heavier it
//!    contracts toward its weighted barycenter, otherwise it expands away
//!    from it, by a fraction `step_vol` of each dimension's amplitude.
//!
//! Fitness is the negated cost, so a fish "eats" when the cost drops. With
//! [`FssSettings::bias_enabled`] the feeding rule uses per-fish factors
//! (`beta_global` for the fish sitting on the school's best-ever fitness,
//! `beta_local` for fish sitting on their own best, `beta_default`
//! otherwise); this is the FSSb variant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{
    evaluate, linear_schedule, mean, uniform, uniform_init, Algorithm, Candidate, Objective,
    Optimizer, SearchSpace, TrialRng,
};

/// Lower weight bound of every fish.
pub const WEIGHT_MIN: f64 = 1.0;

/// Feeding factors of the biased variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Beta {
    pub local: f64,
    pub global: f64,
    pub default: f64,
}

impl Default for Beta {
    fn default() -> Self {
        Self { local: 1.5, global: 2.0, default: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FssSettings {
    /// Individual step amplitude per dimension at the first iteration.
    pub step_ind_init: Vec<f64>,
    /// Individual step amplitude per dimension reached at `max_iter`.
    pub step_ind_final: Vec<f64>,
    /// Volitive step as a fraction of each dimension's bound amplitude.
    pub step_vol_init: f64,
    pub step_vol_final: f64,
    pub w_scale: f64,
    pub bias_enabled: bool,
    #[serde(default)]
    pub beta: Beta,
}

impl FssSettings {
    /// Fraction of the initial individual step kept at the last iteration.
    pub const STEP_IND_FLOOR: f64 = 0.1;

    /// Settings with the given initial individual steps, decaying to 10 %,
    /// and the default volitive schedule (0.08 to 0.06) and `w_scale = 250`.
    pub fn with_steps(step_ind_init: Vec<f64>) -> Self {
        let step_ind_final = step_ind_init.iter().map(|s| s * Self::STEP_IND_FLOOR).collect();
        Self {
            step_ind_init,
            step_ind_final,
            step_vol_init: 0.08,
            step_vol_final: 0.06,
            w_scale: 250.0,
            bias_enabled: false,
            beta: Beta::default(),
        }
    }

    /// Individual steps set to `fraction` of each bound amplitude.
    pub fn proportional(space: &SearchSpace, fraction: f64) -> Self {
        Self::with_steps(space.widths().iter().map(|w| w * fraction).collect())
    }

    pub fn biased(mut self, beta: Beta) -> Self {
        self.bias_enabled = true;
        self.beta = beta;
        self
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        for v in [&self.step_ind_init, &self.step_ind_final] {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: v.len() });
            }
        }
        for (d, (init, fin)) in self.step_ind_init.iter().zip(&self.step_ind_final).enumerate() {
            if !(*fin >= 0.0 && fin <= init) {
                return Err(Error::InvalidSettings(format!(
                    "step_ind dimension {d}: need 0 <= final <= init, got {fin} > {init}"
                )));
            }
        }
        if !(self.step_vol_final >= 0.0 && self.step_vol_final <= self.step_vol_init) {
            return Err(Error::InvalidSettings("need 0 <= step_vol_final <= step_vol_init".into()));
        }
        if !(self.w_scale >= WEIGHT_MIN) {
            return Err(Error::InvalidSettings(format!("w_scale must be >= {WEIGHT_MIN}")));
        }
        Ok(())
    }

    fn feed_mode(&self) -> FeedMode {
        if self.bias_enabled {
            FeedMode::Biased(self.beta)
        } else {
            FeedMode::Plain
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeedMode {
    Plain,
    Biased(Beta),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fish {
    pub position: Vec<f64>,
    pub cost: f64,
    pub weight: f64,
    /// Displacement of the last individual movement; zero when rejected.
    pub delta_x: Vec<f64>,
    /// Fitness gain of the last individual movement; zero when rejected.
    pub delta_f: f64,
    pub personal_best_fitness: f64,
}

impl Fish {
    pub fn new(position: Vec<f64>, cost: f64, weight: f64) -> Self {
        let dim = position.len();
        Self { position, cost, weight, delta_x: vec![0.0; dim], delta_f: 0.0, personal_best_fitness: -cost }
    }

    pub fn fitness(&self) -> f64 {
        -self.cost
    }

    fn observe(&mut self, cost: f64) {
        self.cost = cost;
        self.personal_best_fitness = self.personal_best_fitness.max(-cost);
    }
}

/// `x + u * step` per dimension, clamped. `u` holds draws from `[-1, 1)`.
pub fn individual_candidate(x: &[f64], step: &[f64], u: &[f64], space: &SearchSpace) -> Vec<f64> {
    let mut out: Vec<f64> = x.iter().zip(step).zip(u).map(|((x, s), u)| x + u * s).collect();
    space.clamp_in_place(&mut out);
    out
}

/// Greedy individual move of one fish.
///
/// Draws one `rand(-1, 1)` per dimension and accepts the candidate only on a
/// strict fitness improvement.
pub fn individual_movement<O: Objective + ?Sized>(
    fish: &mut Fish,
    step_now: &[f64],
    space: &SearchSpace,
    objective: &O,
    rng: &mut TrialRng,
    evaluations: &mut u64,
) -> Result<()> {
    let u: Vec<f64> = (0..fish.position.len()).map(|_| uniform(rng, -1.0, 1.0)).collect();
    let candidate = individual_candidate(&fish.position, step_now, &u, space);
    let cost = evaluate(objective, &candidate, evaluations)?;
    accept_if_better(fish, candidate, cost);
    Ok(())
}

/// The greedy rule: move to `candidate` only if it is strictly fitter, and
/// record the displacement and gain (both zero on rejection).
pub fn accept_if_better(fish: &mut Fish, candidate: Vec<f64>, cost: f64) {
    if -cost > fish.fitness() {
        for ((dx, new), old) in fish.delta_x.iter_mut().zip(&candidate).zip(&fish.position) {
            *dx = new - old;
        }
        fish.delta_f = fish.cost - cost;
        fish.position = candidate;
        fish.observe(cost);
    } else {
        fish.delta_x.iter_mut().for_each(|dx| *dx = 0.0);
        fish.delta_f = 0.0;
    }
}

/// Applies `w_i += beta_i * df_i / max_j |df_j|`, clamped to `[WEIGHT_MIN, w_scale]`.
///
/// Leaves every weight unchanged when no fish gained anything.
pub fn feed_weights(weights: &mut [f64], delta_f: &[f64], betas: &[f64], w_scale: f64) {
    let max_gain = delta_f.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    if max_gain == 0.0 {
        return;
    }
    for ((w, df), beta) in weights.iter_mut().zip(delta_f).zip(betas) {
        *w = (*w + beta * df / max_gain).clamp(WEIGHT_MIN, w_scale);
    }
}

/// Feeding factor of each fish.
///
/// In biased mode the lowest-index fish whose current fitness equals
/// `global_best_fitness` gets `beta.global`; other fish sitting on their own
/// best fitness get `beta.local`.
pub fn feeding_betas(fish: &[Fish], global_best_fitness: f64, mode: FeedMode) -> Vec<f64> {
    match mode {
        FeedMode::Plain => vec![1.0; fish.len()],
        FeedMode::Biased(beta) => {
            let holder = fish.iter().position(|f| f.fitness() == global_best_fitness);
            fish.iter()
                .enumerate()
                .map(|(i, f)| {
                    if Some(i) == holder {
                        beta.global
                    } else if f.fitness() == f.personal_best_fitness {
                        beta.local
                    } else {
                        beta.default
                    }
                })
                .collect()
        }
    }
}

/// Gain-weighted mean of the individual displacements, `sum dx_i df_i / sum df_i`.
///
/// Zero when the gains sum to zero.
pub fn instinctive_drift(delta_x: &[&[f64]], delta_f: &[f64]) -> Vec<f64> {
    let dim = delta_x.first().map_or(0, |d| d.len());
    let total: f64 = delta_f.iter().sum();
    let mut drift = vec![0.0; dim];
    if total == 0.0 {
        return drift;
    }
    for (dx, df) in delta_x.iter().zip(delta_f) {
        for (acc, v) in drift.iter_mut().zip(dx.iter()) {
            *acc += v * df;
        }
    }
    drift.iter_mut().for_each(|v| *v /= total);
    drift
}

/// Weight-averaged school position `sum x_i w_i / sum w_i`.
pub fn barycenter(positions: &[&[f64]], weights: &[f64]) -> Vec<f64> {
    let dim = positions.first().map_or(0, |p| p.len());
    let total: f64 = weights.iter().sum();
    let mut b = vec![0.0; dim];
    for (x, w) in positions.iter().zip(weights) {
        for (acc, v) in b.iter_mut().zip(x.iter()) {
            *acc += v * w;
        }
    }
    b.iter_mut().for_each(|v| *v /= total);
    b
}

/// Volitive displacement of one fish, before clamping.
///
/// Distances are measured after scaling each dimension by its bound
/// amplitude `widths[d]`, so the move is a radial contraction (or expansion)
/// of `x - b` by `step_frac * r / dist`. A fish sitting on the barycenter
/// does not move.
pub fn volitive_move(x: &[f64], b: &[f64], step_frac: f64, widths: &[f64], r: f64, contract: bool) -> Vec<f64> {
    let dist = x
        .iter()
        .zip(b)
        .zip(widths)
        .map(|((x, b), w)| ((x - b) / w).powi(2))
        .sum::<f64>()
        .sqrt();
    if dist == 0.0 {
        return x.to_vec();
    }
    let sign = if contract { -1.0 } else { 1.0 };
    let factor = sign * step_frac * r / dist;
    x.iter().zip(b).map(|(x, b)| x + factor * (x - b)).collect()
}

/// The school and everything carried between iterations.
#[derive(Debug, Clone)]
pub struct School {
    pub fish: Vec<Fish>,
    pub barycenter: Vec<f64>,
    pub total_weight_prev: f64,
    pub total_weight_curr: f64,
    pub global_best: Candidate,
    settings: FssSettings,
    space: SearchSpace,
    widths: Vec<f64>,
    evaluations: u64,
}

impl School {
    /// Spawns `n` fish uniformly in the box with weight `w_scale / 2`.
    pub fn init<O: Objective + ?Sized>(
        space: &SearchSpace,
        settings: &FssSettings,
        n: usize,
        objective: &O,
        rng: &mut TrialRng,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPopulation);
        }
        settings.validate(space.dim())?;
        let mut evaluations = 0;
        let mut fish = Vec::with_capacity(n);
        for position in uniform_init(space, n, rng) {
            let cost = evaluate(objective, &position, &mut evaluations)?;
            fish.push(Fish::new(position, cost, settings.w_scale / 2.0));
        }
        let global_best = best_of(&fish);
        let total = fish.iter().map(|f| f.weight).sum();
        let positions: Vec<&[f64]> = fish.iter().map(|f| f.position.as_slice()).collect();
        let weights: Vec<f64> = fish.iter().map(|f| f.weight).collect();
        let barycenter = barycenter(&positions, &weights);
        Ok(Self {
            fish,
            barycenter,
            total_weight_prev: total,
            total_weight_curr: total,
            global_best,
            settings: settings.clone(),
            space: space.clone(),
            widths: space.widths(),
            evaluations,
        })
    }

    pub fn settings(&self) -> &FssSettings {
        &self.settings
    }

    pub fn total_weight(&self) -> f64 {
        self.fish.iter().map(|f| f.weight).sum()
    }

    fn refresh_global_best(&mut self) {
        let best = best_of(&self.fish);
        if best.cost < self.global_best.cost {
            self.global_best = best;
        }
    }

    /// Feeding phase. Returns nothing; updates weights and the weight totals.
    pub fn feed(&mut self, mode: FeedMode) {
        self.total_weight_prev = self.total_weight();
        let betas = feeding_betas(&self.fish, -self.global_best.cost, mode);
        let mut weights: Vec<f64> = self.fish.iter().map(|f| f.weight).collect();
        let delta_f: Vec<f64> = self.fish.iter().map(|f| f.delta_f).collect();
        feed_weights(&mut weights, &delta_f, &betas, self.settings.w_scale);
        for (f, w) in self.fish.iter_mut().zip(weights) {
            f.weight = w;
        }
        self.total_weight_curr = self.total_weight();
    }

    pub fn collective_instinctive_movement(&mut self) {
        let delta_x: Vec<&[f64]> = self.fish.iter().map(|f| f.delta_x.as_slice()).collect();
        let delta_f: Vec<f64> = self.fish.iter().map(|f| f.delta_f).collect();
        let drift = instinctive_drift(&delta_x, &delta_f);
        for f in &mut self.fish {
            for (x, i) in f.position.iter_mut().zip(&drift) {
                *x += i;
            }
            self.space.clamp_in_place(&mut f.position);
        }
    }

    pub fn compute_barycenter(&mut self) -> &[f64] {
        let positions: Vec<&[f64]> = self.fish.iter().map(|f| f.position.as_slice()).collect();
        let weights: Vec<f64> = self.fish.iter().map(|f| f.weight).collect();
        self.barycenter = barycenter(&positions, &weights);
        &self.barycenter
    }

    /// Contracts toward the barycenter if the school got heavier during the
    /// last feed, expands otherwise. One `rand(0, 1)` per fish.
    pub fn collective_volitive_movement(&mut self, step_vol_now: f64, rng: &mut TrialRng) {
        let contract = self.total_weight_curr > self.total_weight_prev;
        for f in &mut self.fish {
            let r = uniform(rng, 0.0, 1.0);
            f.position = volitive_move(&f.position, &self.barycenter, step_vol_now, &self.widths, r, contract);
            self.space.clamp_in_place(&mut f.position);
        }
    }
}

fn best_of(fish: &[Fish]) -> Candidate {
    let mut best = &fish[0];
    for f in &fish[1..] {
        if f.cost < best.cost {
            best = f;
        }
    }
    Candidate { position: best.position.clone(), cost: best.cost }
}

impl Optimizer for School {
    fn algorithm(&self) -> Algorithm {
        if self.settings.bias_enabled {
            Algorithm::Fssb
        } else {
            Algorithm::Fss
        }
    }

    fn step<O: Objective + ?Sized>(
        &mut self,
        iter: usize,
        max_iter: usize,
        objective: &O,
        rng: &mut TrialRng,
    ) -> Result<()> {
        let step_ind: Vec<f64> = self
            .settings
            .step_ind_init
            .iter()
            .zip(&self.settings.step_ind_final)
            .map(|(a, b)| linear_schedule(*a, *b, iter, max_iter))
            .collect::<Result<_>>()?;
        let step_vol = linear_schedule(self.settings.step_vol_init, self.settings.step_vol_final, iter, max_iter)?;

        for f in &mut self.fish {
            individual_movement(f, &step_ind, &self.space, objective, rng, &mut self.evaluations)?;
        }
        self.refresh_global_best();

        self.feed(self.settings.feed_mode());
        self.collective_instinctive_movement();
        self.compute_barycenter();
        self.collective_volitive_movement(step_vol, rng);

        for f in &mut self.fish {
            let cost = evaluate(objective, &f.position, &mut self.evaluations)?;
            f.observe(cost);
        }
        self.refresh_global_best();
        Ok(())
    }

    fn best(&self) -> &Candidate {
        &self.global_best
    }

    fn mean_cost(&self) -> f64 {
        mean(self.fish.iter().map(|f| f.cost))
    }

    fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::{trial_rng, FnObjective};

    fn line(lo: f64, hi: f64) -> SearchSpace {
        SearchSpace::new(vec![lo], vec![hi]).unwrap()
    }

    fn fish_at(x: f64, cost: f64) -> Fish {
        Fish::new(vec![x], cost, 125.0)
    }

    #[test]
    fn zero_step_keeps_position() {
        let space = line(-5.0, 5.0);
        let obj = FnObjective::new(1, |x: &[f64]| x[0] * x[0]);
        let mut fish = fish_at(1.0, 1.0);
        let mut evals = 0;
        individual_movement(&mut fish, &[0.0], &space, &obj, &mut trial_rng(1), &mut evals).unwrap();
        assert_eq!(fish.position, vec![1.0]);
        assert_eq!(fish.delta_f, 0.0);
        assert_eq!(evals, 1);
    }

    #[test]
    fn greedy_rule_rejects_worse_candidate() {
        // f(x) = -x^2, fish at 0, candidate -0.3
        let mut fish = fish_at(0.0, 0.0);
        accept_if_better(&mut fish, vec![-0.3], 0.09);
        assert_eq!(fish.position, vec![0.0]);
        assert_eq!(fish.delta_x, vec![0.0]);
        assert_eq!(fish.delta_f, 0.0);
    }

    #[test]
    fn greedy_rule_accepts_better_candidate() {
        let mut fish = fish_at(1.0, 1.0);
        accept_if_better(&mut fish, vec![0.5], 0.25);
        assert_eq!(fish.position, vec![0.5]);
        assert!((fish.delta_x[0] + 0.5).abs() < 1e-12);
        assert!((fish.delta_f - 0.75).abs() < 1e-12);
        assert_eq!(fish.personal_best_fitness, -0.25);
    }

    #[test]
    fn candidate_is_clamped() {
        let c = individual_candidate(&[0.9], &[0.5], &[0.8], &line(-1.0, 1.0));
        assert_eq!(c, vec![1.0]);
    }

    #[test]
    fn feed_guard_leaves_weights() {
        let mut w = vec![125.0, 80.0];
        feed_weights(&mut w, &[0.0, 0.0], &[1.0, 1.0], 250.0);
        assert_eq!(w, vec![125.0, 80.0]);
    }

    #[test]
    fn feed_plain_and_biased() {
        let mut w = vec![125.0, 125.0];
        feed_weights(&mut w, &[2.0, 1.0], &[1.0, 1.0], 250.0);
        assert_eq!(w, vec![126.0, 125.5]);

        let mut w = vec![125.0, 125.0];
        feed_weights(&mut w, &[2.0, 1.0], &[2.0, 1.0], 250.0);
        assert_eq!(w, vec![127.0, 125.5]);
    }

    #[test]
    fn feed_clamps_to_weight_bounds() {
        let mut w = vec![249.5, 1.2];
        feed_weights(&mut w, &[1.0, -1.0], &[1.0, 1.0], 250.0);
        assert_eq!(w, vec![250.0, 1.0]);
    }

    #[test]
    fn betas_follow_best_holders() {
        let mut a = fish_at(0.0, 1.0);
        a.personal_best_fitness = -1.0;
        let mut b = fish_at(0.0, 0.5);
        b.personal_best_fitness = -0.5;
        let mut c = fish_at(0.0, 2.0);
        c.personal_best_fitness = -1.5;
        let mut d = fish_at(0.0, 0.5);
        d.personal_best_fitness = -0.5;
        let school = [a, b, c, d];
        let betas = feeding_betas(&school, -0.5, FeedMode::Biased(Beta::default()));
        // b holds the global best (lowest index among ties), d only its own.
        assert_eq!(betas, vec![1.5, 2.0, 1.0, 1.5]);
        assert_eq!(feeding_betas(&school, -0.5, FeedMode::Plain), vec![1.0; 4]);
    }

    #[test]
    fn drift_examples() {
        assert_eq!(instinctive_drift(&[&[1.0, 2.0], &[3.0, 4.0]], &[0.0, 0.0]), vec![0.0, 0.0]);
        assert_eq!(instinctive_drift(&[&[1.0, 0.0], &[0.0, 0.0]], &[1.0, 0.0]), vec![1.0, 0.0]);
        let v = [0.3, -0.7, 1.1];
        assert_eq!(instinctive_drift(&[&v], &[0.42]), v.to_vec());
    }

    #[test]
    fn drift_ignores_idle_fish() {
        let with = instinctive_drift(&[&[0.2, 0.4], &[0.1, -0.3], &[9.0, 9.0]], &[0.5, 1.5, 0.0]);
        let without = instinctive_drift(&[&[0.2, 0.4], &[0.1, -0.3]], &[0.5, 1.5]);
        assert_eq!(with, without);
    }

    #[test]
    fn barycenter_examples() {
        assert_eq!(barycenter(&[&[0.0, 0.0], &[1.0, 1.0]], &[3.0, 1.0]), vec![0.25, 0.25]);
        assert_eq!(barycenter(&[&[0.0, 2.0], &[4.0, 6.0]], &[7.0, 7.0]), vec![2.0, 4.0]);
        assert_eq!(barycenter(&[&[1.5, -2.0]], &[42.0]), vec![1.5, -2.0]);
    }

    #[test]
    fn volitive_examples() {
        let contracted = volitive_move(&[2.0], &[0.0], 0.1, &[1.0], 1.0, true);
        assert!((contracted[0] - 1.9).abs() < 1e-12);
        let expanded = volitive_move(&[2.0], &[0.0], 0.1, &[1.0], 1.0, false);
        assert!((expanded[0] - 2.1).abs() < 1e-12);
        assert_eq!(volitive_move(&[0.5, 0.5], &[0.5, 0.5], 0.1, &[1.0, 1.0], 0.7, true), vec![0.5, 0.5]);
    }

    #[test]
    fn volitive_is_radial_in_raw_units() {
        let x = [2500.0, 9.0e-9];
        let b = [2400.0, 8.0e-9];
        let widths = [1000.0, 2.5e-9];
        let moved = volitive_move(&x, &b, 0.08, &widths, 0.5, true);
        let ratio0 = (moved[0] - b[0]) / (x[0] - b[0]);
        let ratio1 = (moved[1] - b[1]) / (x[1] - b[1]);
        assert!((ratio0 - ratio1).abs() < 1e-12);
        assert!(ratio0 < 1.0 && ratio0 > 0.0);
    }

    #[test]
    fn settings_validation() {
        let space = line(0.0, 1.0);
        let mut s = FssSettings::proportional(&space, 0.1);
        assert!(s.validate(1).is_ok());
        assert!(s.validate(2).is_err());
        s.step_ind_final = vec![0.2];
        assert!(s.validate(1).is_err());
    }

    #[test]
    fn sphere_iteration_is_elitist() {
        let space = SearchSpace::new(vec![-5.0; 3], vec![5.0; 3]).unwrap();
        let obj = FnObjective::new(3, |x: &[f64]| x.iter().map(|v| v * v).sum());
        let settings = FssSettings::proportional(&space, 0.1);
        let mut rng = trial_rng(11);
        let mut school = School::init(&space, &settings, 10, &obj, &mut rng).unwrap();
        let before = school.best().cost;
        school.step(0, 50, &obj, &mut rng).unwrap();
        assert!(school.best().cost <= before);
        assert_eq!(school.evaluations(), 10 + 2 * 10);
    }
}
