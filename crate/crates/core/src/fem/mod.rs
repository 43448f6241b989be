//! Euler–Bernoulli frame finite elements and the aeroplane model.

pub mod element;
pub mod garteur;
pub mod mesh;
pub mod modal;
pub mod parametric;

pub use element::{element_matrices, Component, FrameElement};
pub use garteur::{build_garteur, model_frequencies, MeshConfig, ParameterVector};
pub use mesh::{assemble, remove_dofs, Mesh, DOF_PER_NODE};
pub use modal::{solve_modes, solve_modes_with_shapes, ModalResult, RIGID_THRESHOLD_HZ};
pub use parametric::ParametricModel;
