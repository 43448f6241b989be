//! Fast repeated evaluation of the aeroplane frequencies.
//!
//! Stiffness is affine in the seven updated inertias and mass is linear in
//! density, so with `M = rho M1` and `M1 = L L^T`
//!
//! ```text
//! L^-1 K(p) L^-T / rho = (A0 + sum_j p_j A_j) / rho
//! ```
//!
//! where `A0` and `A_j` are reduced once. Each evaluation is then a matrix
//! combination plus one symmetric eigenvalue solve, instead of assembly,
//! factorization and two triangular solves.
//!
//! The price is accuracy: reducing by the mass factor lets the stiff top of
//! the spectrum set the rounding floor, so the lowest frequencies agree with
//! [`solve_modes`](super::modal::solve_modes) to about 1e-8 relative. That is
//! far below anything an optimizer can resolve.

use nalgebra::DMatrix;

use super::element::{mass_with_density, stiffness_parts, FrameElement};
use super::garteur::{build_garteur, section_inertias, MeshConfig, ParameterVector};
use super::mesh::scatter;
use super::modal::{cholesky, congruence, split_modes, ModalResult};
use crate::error::Result;

const N_TERMS: usize = ParameterVector::DIM - 1;

#[derive(Debug, Clone)]
pub struct ParametricModel {
    config: MeshConfig,
    fixed: DMatrix<f64>,
    terms: Vec<DMatrix<f64>>,
}

impl ParametricModel {
    pub fn new(config: MeshConfig) -> Result<Self> {
        let mesh = build_garteur(&ParameterVector::INITIAL, &config)?;
        mesh.check_connected()?;
        let n = mesh.n_dof();
        let mut k_fixed = DMatrix::zeros(n, n);
        let mut k_terms = vec![DMatrix::zeros(n, n); N_TERMS];
        let mut m_unit = DMatrix::zeros(n, n);

        for (idx, e) in mesh.elements.iter().enumerate() {
            let (values, slots) = section_inertias(e.component, &ParameterVector::INITIAL);
            let unit = FrameElement { iz: 1.0, iy: 1.0, j: 1.0, ..e.clone() };
            let parts = stiffness_parts(&unit, &mesh.nodes, idx)?;
            scatter(&mut k_fixed, &parts.axial, e.node_a, e.node_b);
            for ((part, value), slot) in [parts.bend_z, parts.bend_y, parts.torsion].iter().zip(values).zip(slots) {
                match slot {
                    Some(j) => scatter(&mut k_terms[j - 1], part, e.node_a, e.node_b),
                    None => scatter(&mut k_fixed, &(part * value), e.node_a, e.node_b),
                }
            }
            scatter(&mut m_unit, &mass_with_density(e, &mesh.nodes, idx, 1.0)?, e.node_a, e.node_b);
        }

        let chol = cholesky(&m_unit)?;
        let fixed = congruence(&chol, &k_fixed);
        let terms = k_terms.iter().map(|k| congruence(&chol, k)).collect();
        Ok(Self { config, fixed, terms })
    }

    pub fn config(&self) -> &MeshConfig {
        &self.config
    }

    pub fn n_dof(&self) -> usize {
        self.fixed.nrows()
    }

    /// Lowest `n` elastic frequencies at `p`.
    pub fn frequencies(&self, p: &ParameterVector, n: usize) -> Result<ModalResult> {
        p.validate()?;
        let values = p.to_array();
        let mut a = self.fixed.clone();
        for (term, value) in self.terms.iter().zip(&values[1..]) {
            for (dst, src) in a.as_mut_slice().iter_mut().zip(term.as_slice()) {
                *dst += value * src;
            }
        }
        a /= p.rho;
        split_modes(a.symmetric_eigenvalues().iter().copied().collect(), n)
    }
}
