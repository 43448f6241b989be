//! Inertia-weight particle swarm optimization.
//!
//! Velocity update `v = w v + c1 r1 (p - x) + c2 r2 (g - x)` with the
//! inertia weight decaying linearly from 1 to 0 over the run, followed by
//! `x = x + v`. Velocities are clamped to the space's velocity bounds and
//! positions to its position bounds. The update is synchronous: every
//! particle in an iteration sees the global best of the previous one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{
    evaluate, mean, uniform, uniform_init, Algorithm, Candidate, Objective, Optimizer,
    SearchSpace, TrialRng,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoSettings {
    pub c1: f64,
    pub c2: f64,
}

impl Default for PsoSettings {
    fn default() -> Self {
        Self { c1: 2.0, c2: 2.0 }
    }
}

/// `(max_iter - iter) / max_iter`.
pub fn inertia_weight(iter: usize, max_iter: usize) -> Result<f64> {
    crate::optimizer::linear_schedule(1.0, 0.0, iter, max_iter)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub cost: f64,
    pub personal_best: Candidate,
}

/// Velocity update for explicit random coefficients `r1`, `r2` (one per
/// dimension), clamped to the velocity bounds of `space` if it has any.
pub fn velocity_update(
    particle: &Particle,
    global_best: &[f64],
    w: f64,
    settings: &PsoSettings,
    r1: &[f64],
    r2: &[f64],
    space: &SearchSpace,
) -> Vec<f64> {
    let mut v: Vec<f64> = (0..particle.position.len())
        .map(|d| {
            let x = particle.position[d];
            w * particle.velocity[d]
                + settings.c1 * r1[d] * (particle.personal_best.position[d] - x)
                + settings.c2 * r2[d] * (global_best[d] - x)
        })
        .collect();
    space.clamp_velocity_in_place(&mut v);
    v
}

/// Draws `r1`, `r2` per dimension (all of `r1` first) and updates the velocity.
pub fn update_velocity(
    particle: &mut Particle,
    global_best: &[f64],
    w: f64,
    settings: &PsoSettings,
    space: &SearchSpace,
    rng: &mut TrialRng,
) {
    let dim = particle.position.len();
    let r1: Vec<f64> = (0..dim).map(|_| uniform(rng, 0.0, 1.0)).collect();
    let r2: Vec<f64> = (0..dim).map(|_| uniform(rng, 0.0, 1.0)).collect();
    particle.velocity = velocity_update(particle, global_best, w, settings, &r1, &r2, space);
}

/// `x = clamp(x + v)`.
pub fn update_position(particle: &mut Particle, space: &SearchSpace) {
    for (x, v) in particle.position.iter_mut().zip(&particle.velocity) {
        *x += v;
    }
    space.clamp_in_place(&mut particle.position);
}

#[derive(Debug, Clone)]
pub struct Swarm {
    pub particles: Vec<Particle>,
    pub global_best: Candidate,
    settings: PsoSettings,
    space: SearchSpace,
    evaluations: u64,
}

impl Swarm {
    /// Positions uniform in the box, then velocities uniform in the velocity
    /// bounds, particle by particle.
    pub fn init<O: Objective + ?Sized>(
        space: &SearchSpace,
        settings: &PsoSettings,
        n: usize,
        objective: &O,
        rng: &mut TrialRng,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPopulation);
        }
        let (vmin, vmax) = match (space.min_velocity(), space.max_velocity()) {
            (Some(lo), Some(hi)) => (lo.to_vec(), hi.to_vec()),
            _ => return Err(Error::InvalidSearchSpace("particle swarm needs velocity bounds".into())),
        };
        let positions = uniform_init(space, n, rng);
        let mut evaluations = 0;
        let mut particles = Vec::with_capacity(n);
        for position in positions {
            let velocity = vmin.iter().zip(&vmax).map(|(lo, hi)| uniform(rng, *lo, *hi)).collect();
            let cost = evaluate(objective, &position, &mut evaluations)?;
            particles.push(Particle {
                personal_best: Candidate { position: position.clone(), cost },
                position,
                velocity,
                cost,
            });
        }
        let global_best = best_personal(&particles);
        Ok(Self { particles, global_best, settings: *settings, space: space.clone(), evaluations })
    }
}

fn best_personal(particles: &[Particle]) -> Candidate {
    let mut best = &particles[0].personal_best;
    for p in &particles[1..] {
        if p.personal_best.cost < best.cost {
            best = &p.personal_best;
        }
    }
    best.clone()
}

impl Optimizer for Swarm {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Pso
    }

    fn step<O: Objective + ?Sized>(
        &mut self,
        iter: usize,
        max_iter: usize,
        objective: &O,
        rng: &mut TrialRng,
    ) -> Result<()> {
        let w = inertia_weight(iter, max_iter)?;
        let gbest = self.global_best.position.clone();
        for p in &mut self.particles {
            update_velocity(p, &gbest, w, &self.settings, &self.space, rng);
            update_position(p, &self.space);
            p.cost = evaluate(objective, &p.position, &mut self.evaluations)?;
            if p.cost < p.personal_best.cost {
                p.personal_best = Candidate { position: p.position.clone(), cost: p.cost };
            }
        }
        self.global_best = best_personal(&self.particles);
        Ok(())
    }

    fn best(&self) -> &Candidate {
        &self.global_best
    }

    fn mean_cost(&self) -> f64 {
        mean(self.particles.iter().map(|p| p.cost))
    }

    fn evaluations(&self) -> u64 {
        self.evaluations
    }
}
