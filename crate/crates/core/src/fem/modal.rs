//! Dense generalized eigen-solution `K phi = lambda M phi`.
//!
//! The direct solver works on the shifted inverse problem. With
//! `K + sigma M = L L^T` it solves the standard symmetric problem
//! `L^-1 M L^-T y = mu y`, where `mu = 1 / (lambda + sigma)`. The lowest
//! modes, the only ones of interest, become the largest `mu` and are
//! resolved to near machine precision even though the axial and rotational
//! modes of a frame push the top of the spectrum many orders of magnitude
//! higher.

use std::f64::consts::TAU;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Modes below this frequency are treated as rigid-body modes.
pub const RIGID_THRESHOLD_HZ: f64 = 0.5;

/// Spectral shift of the direct solver, as a frequency. It only has to make
/// `K + sigma M` positive definite; accuracy degrades slowly as the first
/// elastic frequency moves far above it.
pub const SHIFT_HZ: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModalResult {
    /// Lowest elastic natural frequencies, ascending.
    pub frequencies_hz: Vec<f64>,
    pub rigid_mode_count: usize,
    /// `|f|` of the discarded rigid modes, ascending. Non-zero values are
    /// numerical noise.
    pub rigid_frequencies_hz: Vec<f64>,
}

/// Signed frequency `sign(lambda) sqrt(|lambda|) / 2 pi`.
pub fn eigenvalue_to_hz(lambda: f64) -> f64 {
    lambda.signum() * lambda.abs().sqrt() / TAU
}

pub(crate) fn split_modes(mut eigenvalues: Vec<f64>, n_elastic: usize) -> Result<ModalResult> {
    eigenvalues.sort_by(f64::total_cmp);
    let mut rigid = Vec::new();
    let mut elastic = Vec::with_capacity(n_elastic);
    for lambda in eigenvalues {
        let f = eigenvalue_to_hz(lambda);
        if f.abs() < RIGID_THRESHOLD_HZ {
            rigid.push(f.abs());
        } else if elastic.len() < n_elastic {
            elastic.push(f);
        } else {
            break;
        }
    }
    if elastic.len() < n_elastic {
        return Err(Error::NotEnoughModes { requested: n_elastic, available: elastic.len() });
    }
    rigid.sort_by(f64::total_cmp);
    Ok(ModalResult { frequencies_hz: elastic, rigid_mode_count: rigid.len(), rigid_frequencies_hz: rigid })
}

pub(crate) fn cholesky(m: &DMatrix<f64>) -> Result<Cholesky<f64, Dyn>> {
    Cholesky::new(m.clone()).ok_or(Error::MassNotPositiveDefinite)
}

/// `L^-1 A L^-T` for a Cholesky factor `L`, symmetrized.
pub(crate) fn congruence(chol: &Cholesky<f64, Dyn>, a: &DMatrix<f64>) -> DMatrix<f64> {
    let l = chol.l_dirty();
    let x = l.solve_lower_triangular(a).expect("cholesky factor is non-singular");
    let s = l.solve_lower_triangular(&x.transpose()).expect("cholesky factor is non-singular");
    (&s + s.transpose()) * 0.5
}

fn shifted_factor(k: &DMatrix<f64>, m: &DMatrix<f64>, sigma: f64) -> Result<Cholesky<f64, Dyn>> {
    match Cholesky::new(k + m * sigma) {
        Some(c) => Ok(c),
        None if Cholesky::new(m.clone()).is_none() => Err(Error::MassNotPositiveDefinite),
        None => Err(Error::StiffnessIndefinite),
    }
}

fn shift() -> f64 {
    (TAU * SHIFT_HZ).powi(2)
}

/// `lambda` from `mu`, rejecting the non-positive `mu` an indefinite mass
/// matrix produces.
fn unshift(mu: f64, sigma: f64) -> Result<f64> {
    if mu > 0.0 {
        Ok(1.0 / mu - sigma)
    } else {
        Err(Error::MassNotPositiveDefinite)
    }
}

/// Lowest `n_elastic` elastic natural frequencies of `(K, M)`.
pub fn solve_modes(k: &DMatrix<f64>, m: &DMatrix<f64>, n_elastic: usize) -> Result<ModalResult> {
    let sigma = shift();
    let chol = shifted_factor(k, m, sigma)?;
    let c = congruence(&chol, m);
    let lambdas = c.symmetric_eigenvalues().iter().map(|&mu| unshift(mu, sigma)).collect::<Result<_>>()?;
    split_modes(lambdas, n_elastic)
}

/// Like [`solve_modes`], also returning the mass-normalized shapes of the
/// returned elastic modes as `(lambda, phi)` pairs.
pub fn solve_modes_with_shapes(
    k: &DMatrix<f64>,
    m: &DMatrix<f64>,
    n_elastic: usize,
) -> Result<(ModalResult, Vec<(f64, DVector<f64>)>)> {
    let sigma = shift();
    let chol = shifted_factor(k, m, sigma)?;
    let eig = congruence(&chol, m).symmetric_eigen();
    let lambdas: Vec<f64> = eig.eigenvalues.iter().map(|&mu| unshift(mu, sigma)).collect::<Result<_>>()?;
    let result = split_modes(lambdas.clone(), n_elastic)?;
    let mut order: Vec<usize> = (0..lambdas.len()).collect();
    order.sort_by(|&i, &j| lambdas[i].total_cmp(&lambdas[j]));
    let lt = chol.l_dirty().transpose();
    let shapes = order
        .into_iter()
        .skip(result.rigid_mode_count)
        .take(n_elastic)
        .map(|i| {
            let y = eig.eigenvectors.column(i).into_owned();
            let phi = lt.solve_upper_triangular(&y).expect("cholesky factor is non-singular");
            (lambdas[i], phi / eig.eigenvalues[i].sqrt())
        })
        .collect();
    Ok((result, shapes))
}
