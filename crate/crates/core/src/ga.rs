//! Real-coded genetic algorithm.
//!
//! Generational scheme with truncation selection, blend (BLX-alpha)
//! crossover, Gaussian perturbation mutation and elitism. Chromosomes are
//! the raw parameter vectors; every operator clamps to the search box.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{
    evaluate, mean, uniform, uniform_init, Algorithm, Candidate, Objective, Optimizer,
    SearchSpace, TrialRng,
};

/// A chromosome (one gene per parameter) and its cost.
pub type Individual = Candidate;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaSettings {
    /// Probability that a single gene is mutated.
    pub mutation_rate: f64,
    /// Fraction of the population kept as the mating pool.
    pub selection_rate: f64,
    pub elite_count: usize,
    pub blend_alpha: f64,
    /// Mutation standard deviation as a fraction of the gene's bound width.
    pub mutation_scale: f64,
}

impl Default for GaSettings {
    fn default() -> Self {
        Self { mutation_rate: 0.2, selection_rate: 0.5, elite_count: 1, blend_alpha: 0.5, mutation_scale: 0.05 }
    }
}

impl GaSettings {
    pub fn validate(&self, population: usize) -> Result<()> {
        if !(self.selection_rate > 0.0 && self.selection_rate <= 1.0) {
            return Err(Error::InvalidSettings("selection_rate must be in (0, 1]".into()));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::InvalidSettings("mutation_rate must be in [0, 1]".into()));
        }
        if self.elite_count >= population {
            return Err(Error::InvalidSettings(format!(
                "elite_count {} must be below the population size {population}",
                self.elite_count
            )));
        }
        if !(self.blend_alpha >= 0.0 && self.mutation_scale >= 0.0) {
            return Err(Error::InvalidSettings("blend_alpha and mutation_scale must be non-negative".into()));
        }
        Ok(())
    }
}

/// Sorts by cost, ascending; equal costs keep their index order.
pub fn sort_population(population: &mut [Individual]) {
    population.sort_by(|a, b| a.cost.total_cmp(&b.cost));
}

/// Truncation selection: the best `ceil(selection_rate * N)` of a sorted population.
pub fn select(population: &[Individual], selection_rate: f64) -> Result<&[Individual]> {
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let n = ((selection_rate * population.len() as f64).ceil() as usize).clamp(1, population.len());
    Ok(&population[..n])
}

/// Blend of one gene pair for a given `u`: `(a + u (b - a), b + u (a - b))`.
pub fn blend(a: f64, b: f64, u: f64) -> (f64, f64) {
    (a + u * (b - a), b + u * (a - b))
}

/// BLX-alpha crossover, one `u` in `[-alpha, 1 + alpha]` per gene.
pub fn crossover(
    a: &[f64],
    b: &[f64],
    alpha: f64,
    space: &SearchSpace,
    rng: &mut TrialRng,
) -> (Vec<f64>, Vec<f64>) {
    let (mut c1, mut c2): (Vec<f64>, Vec<f64>) = a
        .iter()
        .zip(b)
        .map(|(a, b)| blend(*a, *b, uniform(rng, -alpha, 1.0 + alpha)))
        .unzip();
    space.clamp_in_place(&mut c1);
    space.clamp_in_place(&mut c2);
    (c1, c2)
}

/// Perturbs each gene with probability `rate` by a zero-mean normal of
/// standard deviation `scale * width`. Returns the number of genes touched.
///
/// One uniform draw is consumed per gene whether or not it mutates.
pub fn mutate(genes: &mut [f64], rate: f64, scale: f64, space: &SearchSpace, rng: &mut TrialRng) -> usize {
    let mut touched = 0;
    for (d, g) in genes.iter_mut().enumerate() {
        if rng.gen::<f64>() < rate {
            let sd = scale * space.width(d);
            if sd > 0.0 {
                *g += Normal::new(0.0, sd).expect("finite positive sd").sample(rng);
            }
            touched += 1;
        }
    }
    space.clamp_in_place(genes);
    touched
}

#[derive(Debug, Clone)]
pub struct Population {
    /// Sorted by cost, best first.
    pub individuals: Vec<Individual>,
    settings: GaSettings,
    space: SearchSpace,
    evaluations: u64,
}

impl Population {
    pub fn init<O: Objective + ?Sized>(
        space: &SearchSpace,
        settings: &GaSettings,
        n: usize,
        objective: &O,
        rng: &mut TrialRng,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPopulation);
        }
        settings.validate(n)?;
        let mut evaluations = 0;
        let mut individuals = Vec::with_capacity(n);
        for position in uniform_init(space, n, rng) {
            let cost = evaluate(objective, &position, &mut evaluations)?;
            individuals.push(Individual { position, cost });
        }
        sort_population(&mut individuals);
        Ok(Self { individuals, settings: *settings, space: space.clone(), evaluations })
    }

    /// One generation: elites survive, the rest is bred from the mating pool
    /// (parents drawn uniformly), mutated and evaluated.
    pub fn generation<O: Objective + ?Sized>(&mut self, objective: &O, rng: &mut TrialRng) -> Result<()> {
        let n = self.individuals.len();
        let s = self.settings;
        let pool = select(&self.individuals, s.selection_rate)?;
        let mut children: Vec<Vec<f64>> = Vec::with_capacity(n);
        while children.len() < n - s.elite_count {
            let a = &pool[rng.gen_range(0..pool.len())].position;
            let b = &pool[rng.gen_range(0..pool.len())].position;
            let (c1, c2) = crossover(a, b, s.blend_alpha, &self.space, rng);
            children.push(c1);
            if children.len() < n - s.elite_count {
                children.push(c2);
            }
        }
        for child in &mut children {
            mutate(child, s.mutation_rate, s.mutation_scale, &self.space, rng);
        }
        let mut next: Vec<Individual> = self.individuals[..s.elite_count].to_vec();
        for position in children {
            let cost = evaluate(objective, &position, &mut self.evaluations)?;
            next.push(Individual { position, cost });
        }
        sort_population(&mut next);
        self.individuals = next;
        Ok(())
    }
}

impl Optimizer for Population {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Ga
    }

    fn step<O: Objective + ?Sized>(
        &mut self,
        _iter: usize,
        _max_iter: usize,
        objective: &O,
        rng: &mut TrialRng,
    ) -> Result<()> {
        self.generation(objective, rng)
    }

    fn best(&self) -> &Candidate {
        &self.individuals[0]
    }

    fn mean_cost(&self) -> f64 {
        mean(self.individuals.iter().map(|i| i.cost))
    }

    fn evaluations(&self) -> u64 {
        self.evaluations
    }
}
