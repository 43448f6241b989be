//! Shared helpers: a bound-normalized sphere and a mini-run driver that checks
//! the structural invariants after every iteration.

#![allow(dead_code)]

use fss_fem::fss::{School, WEIGHT_MIN};
use fss_fem::ga::{GaSettings, Population};
use fss_fem::harness::{default_fss_settings, default_search_space};
use fss_fem::optimizer::{trial_rng, uniform, Optimizer, TrialRng};
use fss_fem::pso::{PsoSettings, Swarm};
use fss_fem::{Algorithm, FnObjective, Objective, SearchSpace};

pub const W_SCALE: f64 = 250.0;

/// `sum ((x_d - c_d) / width_d)^2` with a random centre inside the box.
pub fn sphere(space: &SearchSpace, rng: &mut TrialRng) -> impl Objective {
    let centre: Vec<f64> =
        (0..space.dim()).map(|d| uniform(rng, space.min_position()[d], space.max_position()[d])).collect();
    let widths = space.widths();
    FnObjective::new(space.dim(), move |x: &[f64]| {
        x.iter().zip(&centre).zip(&widths).map(|((x, c), w)| ((x - c) / w).powi(2)).sum()
    })
}

fn within(space: &SearchSpace, v: &[f64], lo: &[f64], hi: &[f64]) -> bool {
    v.len() == space.dim() && v.iter().zip(lo).zip(hi).all(|((v, lo), hi)| lo <= v && v <= hi)
}

fn check<O: Optimizer>(opt: &O, trace: &mut Vec<f64>) -> Result<(), String> {
    let best = opt.best().cost;
    if let Some(prev) = trace.last() {
        if best > *prev {
            return Err(format!("best cost rose from {prev} to {best}"));
        }
    }
    trace.push(best);
    Ok(())
}

/// Runs `iters` iterations with population `pop` on a seeded sphere over the
/// default bounds and returns the best-so-far trace, or the first violated
/// invariant.
pub fn checked_mini_run(algorithm: Algorithm, seed: u64, pop: usize, iters: usize) -> Result<Vec<f64>, String> {
    let space = default_search_space();
    let mut rng = trial_rng(seed);
    let objective = sphere(&space, &mut rng);
    let (vmin, vmax) = (space.min_velocity().unwrap(), space.max_velocity().unwrap());
    let mut trace = Vec::with_capacity(iters);
    let err = |e: fss_fem::Error| e.to_string();
    match algorithm {
        Algorithm::Fss | Algorithm::Fssb => {
            let mut settings = default_fss_settings();
            if algorithm == Algorithm::Fssb {
                settings = settings.biased(Default::default());
            }
            let mut school = School::init(&space, &settings, pop, &objective, &mut rng).map_err(err)?;
            for it in 0..iters {
                school.step(it, iters, &objective, &mut rng).map_err(err)?;
                for (i, f) in school.fish.iter().enumerate() {
                    if !(WEIGHT_MIN..=W_SCALE).contains(&f.weight) {
                        return Err(format!("iter {it}: fish {i} weight {}", f.weight));
                    }
                    if !space.contains(&f.position) {
                        return Err(format!("iter {it}: fish {i} left the box"));
                    }
                }
                check(&school, &mut trace)?;
            }
        }
        Algorithm::Pso => {
            let mut swarm = Swarm::init(&space, &PsoSettings::default(), pop, &objective, &mut rng).map_err(err)?;
            for it in 0..iters {
                swarm.step(it, iters, &objective, &mut rng).map_err(err)?;
                for (i, p) in swarm.particles.iter().enumerate() {
                    if !space.contains(&p.position) {
                        return Err(format!("iter {it}: particle {i} left the box"));
                    }
                    if !within(&space, &p.velocity, vmin, vmax) {
                        return Err(format!("iter {it}: particle {i} velocity out of bounds"));
                    }
                }
                let min_pbest = swarm.particles.iter().map(|p| p.personal_best.cost).fold(f64::INFINITY, f64::min);
                if swarm.global_best.cost != min_pbest {
                    return Err(format!("iter {it}: gbest {} != min pbest {min_pbest}", swarm.global_best.cost));
                }
                check(&swarm, &mut trace)?;
            }
        }
        Algorithm::Ga => {
            let mut population = Population::init(&space, &GaSettings::default(), pop, &objective, &mut rng)
                .map_err(err)?;
            for it in 0..iters {
                population.step(it, iters, &objective, &mut rng).map_err(err)?;
                if population.individuals.len() != pop {
                    return Err(format!("iter {it}: population size {}", population.individuals.len()));
                }
                if let Some(i) = population.individuals.iter().position(|ind| !space.contains(&ind.position)) {
                    return Err(format!("iter {it}: individual {i} left the box"));
                }
                check(&population, &mut trace)?;
            }
        }
    }
    Ok(trace)
}

pub mod beam {
    use std::f64::consts::TAU;

    use fss_fem::fem::{Component, FrameElement, Mesh};

    pub const E: f64 = 210e9;
    pub const RHO: f64 = 7850.0;
    pub const SIDE: f64 = 0.02;
    pub const LENGTH: f64 = 1.0;

    /// A 1 m steel bar of square section along `x`, in `n` elements.
    pub fn square_beam(n: usize) -> Mesh {
        let area = SIDE * SIDE;
        let i = SIDE.powi(4) / 12.0;
        let nodes = (0..=n).map(|k| [LENGTH * k as f64 / n as f64, 0.0, 0.0]).collect();
        let elements = (0..n)
            .map(|k| FrameElement {
                node_a: k,
                node_b: k + 1,
                component: Component::Other,
                e: E,
                g: E / 2.6,
                rho: RHO,
                area,
                iy: i,
                iz: i,
                j: 0.141 * SIDE.powi(4),
                ip: 2.0 * i,
                reference: [0.0, 1.0, 0.0],
            })
            .collect();
        Mesh { nodes, elements }
    }

    /// Euler–Bernoulli bending frequency for the root `beta L` of the
    /// characteristic equation.
    pub fn euler_bernoulli_hz(beta_l: f64) -> f64 {
        let i = SIDE.powi(4) / 12.0;
        beta_l * beta_l / TAU * (E * i / (RHO * SIDE * SIDE * LENGTH.powi(4))).sqrt()
    }
}

#[allow(unused_imports)]
pub use beam::{euler_bernoulli_hz, square_beam};
