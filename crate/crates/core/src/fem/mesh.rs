//! Node/element containers and global assembly.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::element::{mass_with_density, stiffness_parts, FrameElement, Matrix12};
use crate::error::{Error, Result};

pub const DOF_PER_NODE: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub nodes: Vec<[f64; 3]>,
    pub elements: Vec<FrameElement>,
}

impl Mesh {
    pub fn n_dof(&self) -> usize {
        DOF_PER_NODE * self.nodes.len()
    }

    /// Number of connected components of the node graph. Nodes not touched
    /// by any element count as their own component.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for e in &self.elements {
            if e.node_a >= parent.len() || e.node_b >= parent.len() {
                continue;
            }
            let (a, b) = (find(&mut parent, e.node_a), find(&mut parent, e.node_b));
            if a != b {
                parent[a] = b;
            }
        }
        (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Same structure with node `i` moved to position `perm[i]`.
    pub fn renumbered(&self, perm: &[usize]) -> Mesh {
        let mut nodes = vec![[0.0; 3]; self.nodes.len()];
        for (i, p) in perm.iter().enumerate() {
            nodes[*p] = self.nodes[i];
        }
        let elements = self
            .elements
            .iter()
            .map(|e| FrameElement { node_a: perm[e.node_a], node_b: perm[e.node_b], ..e.clone() })
            .collect();
        Mesh { nodes, elements }
    }

    pub(crate) fn check_connected(&self) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidElement { index: 0, reason: "mesh has no elements".into() });
        }
        match self.components() {
            1 => Ok(()),
            components => Err(Error::DisconnectedMesh { components }),
        }
    }
}

pub(crate) fn scatter(global: &mut DMatrix<f64>, local: &Matrix12, a: usize, b: usize) {
    let map = |i: usize| if i < 6 { DOF_PER_NODE * a + i } else { DOF_PER_NODE * b + i - 6 };
    for i in 0..12 {
        let gi = map(i);
        for j in 0..12 {
            global[(gi, map(j))] += local[(i, j)];
        }
    }
}

/// Global stiffness `K` and mass `M`, both `6 n_nodes` square.
pub fn assemble(mesh: &Mesh) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    mesh.check_connected()?;
    let n = mesh.n_dof();
    let mut k = DMatrix::zeros(n, n);
    let mut m = DMatrix::zeros(n, n);
    for (idx, e) in mesh.elements.iter().enumerate() {
        let ke = stiffness_parts(e, &mesh.nodes, idx)?.total();
        let me = mass_with_density(e, &mesh.nodes, idx, e.rho)?;
        scatter(&mut k, &ke, e.node_a, e.node_b);
        scatter(&mut m, &me, e.node_a, e.node_b);
    }
    Ok((k, m))
}

/// Drops the rows and columns of `fixed` DOFs (clamped supports).
pub fn remove_dofs(matrix: &DMatrix<f64>, fixed: &[usize]) -> DMatrix<f64> {
    let keep: Vec<usize> = (0..matrix.nrows()).filter(|i| !fixed.contains(i)).collect();
    DMatrix::from_fn(keep.len(), keep.len(), |i, j| matrix[(keep[i], keep[j])])
}
