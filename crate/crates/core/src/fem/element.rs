//! Two-node Euler–Bernoulli frame element with 6 DOF per node.
//!
//! DOF order per node is `(u, v, w, theta_x, theta_y, theta_z)` in the
//! element's local triad: local `x` runs from node A to node B, local `y`
//! lies in the plane spanned by `x` and the element's reference vector, and
//! `z = x × y`. `iz` governs bending in the local x-y plane, `iy` bending in
//! the x-z plane, `j` torsion.

use nalgebra::{Matrix3, SMatrix, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix12 = SMatrix<f64, 12, 12>;

/// Structural part of the aeroplane an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Fuselage,
    LeftWing,
    RightWing,
    VerticalTail,
    HorizontalTail,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameElement {
    pub node_a: usize,
    pub node_b: usize,
    pub component: Component,
    /// Young's modulus, Pa.
    pub e: f64,
    /// Shear modulus, Pa.
    pub g: f64,
    /// Density, kg/m^3.
    pub rho: f64,
    /// Cross-section area, m^2.
    pub area: f64,
    /// Second moment of area about local y, m^4.
    pub iy: f64,
    /// Second moment of area about local z, m^4.
    pub iz: f64,
    /// Torsion constant, m^4.
    pub j: f64,
    /// Polar moment of area used for rotary inertia about the axis, m^4.
    pub ip: f64,
    /// Any vector not parallel to the element axis; fixes local `y`.
    pub reference: [f64; 3],
}

impl FrameElement {
    pub fn validate(&self, index: usize) -> Result<()> {
        let props = [
            ("e", self.e),
            ("g", self.g),
            ("rho", self.rho),
            ("area", self.area),
            ("iy", self.iy),
            ("iz", self.iz),
            ("j", self.j),
            ("ip", self.ip),
        ];
        for (name, v) in props {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidElement { index, reason: format!("{name} = {v} must be positive") });
            }
        }
        if self.node_a == self.node_b {
            return Err(Error::InvalidElement { index, reason: "both ends on the same node".into() });
        }
        Ok(())
    }
}

/// Length and local-to-global rotation of an element.
#[derive(Debug, Clone, Copy)]
pub struct Geometry {
    pub length: f64,
    /// Rows are the local x, y, z axes in global coordinates.
    pub rotation: Matrix3<f64>,
}

impl Geometry {
    pub fn new(a: [f64; 3], b: [f64; 3], reference: [f64; 3]) -> Option<Self> {
        let axis = Vector3::from(b) - Vector3::from(a);
        let length = axis.norm();
        if !(length > 0.0 && length.is_finite()) {
            return None;
        }
        let ex = axis / length;
        let ez = ex.cross(&Vector3::from(reference));
        let ez_norm = ez.norm();
        if ez_norm < 1e-9 * Vector3::from(reference).norm().max(f64::MIN_POSITIVE) {
            return None;
        }
        let ez = ez / ez_norm;
        let ey = ez.cross(&ex);
        let rotation = Matrix3::from_rows(&[ex.transpose(), ey.transpose(), ez.transpose()]);
        Some(Self { length, rotation })
    }

    fn transform(&self, local: &Matrix12) -> Matrix12 {
        let mut t = Matrix12::zeros();
        for blk in 0..4 {
            t.fixed_view_mut::<3, 3>(3 * blk, 3 * blk).copy_from(&self.rotation);
        }
        let g = t.transpose() * local * t;
        (g + g.transpose()) * 0.5
    }
}

fn symmetric_fill(m: &mut Matrix12) {
    for i in 0..12 {
        for j in 0..i {
            m[(i, j)] = m[(j, i)];
        }
    }
}

/// Local axial stiffness for axial rigidity `ea`.
pub fn local_axial(ea: f64, l: f64) -> Matrix12 {
    let mut k = Matrix12::zeros();
    k[(0, 0)] = ea / l;
    k[(0, 6)] = -ea / l;
    k[(6, 6)] = ea / l;
    symmetric_fill(&mut k);
    k
}

/// Local torsional stiffness for torsional rigidity `gj`.
pub fn local_torsion(gj: f64, l: f64) -> Matrix12 {
    let mut k = Matrix12::zeros();
    k[(3, 3)] = gj / l;
    k[(3, 9)] = -gj / l;
    k[(9, 9)] = gj / l;
    symmetric_fill(&mut k);
    k
}

/// Local bending stiffness in the x-y plane (v, theta_z) for rigidity `eiz`.
pub fn local_bending_z(eiz: f64, l: f64) -> Matrix12 {
    let (l2, l3) = (l * l, l * l * l);
    let mut k = Matrix12::zeros();
    k[(1, 1)] = 12.0 * eiz / l3;
    k[(1, 5)] = 6.0 * eiz / l2;
    k[(1, 7)] = -12.0 * eiz / l3;
    k[(1, 11)] = 6.0 * eiz / l2;
    k[(5, 5)] = 4.0 * eiz / l;
    k[(5, 7)] = -6.0 * eiz / l2;
    k[(5, 11)] = 2.0 * eiz / l;
    k[(7, 7)] = 12.0 * eiz / l3;
    k[(7, 11)] = -6.0 * eiz / l2;
    k[(11, 11)] = 4.0 * eiz / l;
    symmetric_fill(&mut k);
    k
}

/// Local bending stiffness in the x-z plane (w, theta_y) for rigidity `eiy`.
pub fn local_bending_y(eiy: f64, l: f64) -> Matrix12 {
    let (l2, l3) = (l * l, l * l * l);
    let mut k = Matrix12::zeros();
    k[(2, 2)] = 12.0 * eiy / l3;
    k[(2, 4)] = -6.0 * eiy / l2;
    k[(2, 8)] = -12.0 * eiy / l3;
    k[(2, 10)] = -6.0 * eiy / l2;
    k[(4, 4)] = 4.0 * eiy / l;
    k[(4, 8)] = 6.0 * eiy / l2;
    k[(4, 10)] = 2.0 * eiy / l;
    k[(8, 8)] = 12.0 * eiy / l3;
    k[(8, 10)] = 6.0 * eiy / l2;
    k[(10, 10)] = 4.0 * eiy / l;
    symmetric_fill(&mut k);
    k
}

/// Local consistent mass for mass per length `rho_a` and rotary inertia per
/// length `rho_ip`.
pub fn local_mass(rho_a: f64, rho_ip: f64, l: f64) -> Matrix12 {
    let mut m = Matrix12::zeros();
    let ax = rho_a * l;
    m[(0, 0)] = ax / 3.0;
    m[(0, 6)] = ax / 6.0;
    m[(6, 6)] = ax / 3.0;
    let tor = rho_ip * l;
    m[(3, 3)] = tor / 3.0;
    m[(3, 9)] = tor / 6.0;
    m[(9, 9)] = tor / 3.0;

    let c = rho_a * l / 420.0;
    let l2 = l * l;
    // v, theta_z
    m[(1, 1)] = 156.0 * c;
    m[(1, 5)] = 22.0 * l * c;
    m[(1, 7)] = 54.0 * c;
    m[(1, 11)] = -13.0 * l * c;
    m[(5, 5)] = 4.0 * l2 * c;
    m[(5, 7)] = 13.0 * l * c;
    m[(5, 11)] = -3.0 * l2 * c;
    m[(7, 7)] = 156.0 * c;
    m[(7, 11)] = -22.0 * l * c;
    m[(11, 11)] = 4.0 * l2 * c;
    // w, theta_y
    m[(2, 2)] = 156.0 * c;
    m[(2, 4)] = -22.0 * l * c;
    m[(2, 8)] = 54.0 * c;
    m[(2, 10)] = 13.0 * l * c;
    m[(4, 4)] = 4.0 * l2 * c;
    m[(4, 8)] = -13.0 * l * c;
    m[(4, 10)] = -3.0 * l2 * c;
    m[(8, 8)] = 156.0 * c;
    m[(8, 10)] = 22.0 * l * c;
    m[(10, 10)] = 4.0 * l2 * c;
    symmetric_fill(&mut m);
    m
}

/// Global stiffness split by section property, so that the total is
/// `axial + bend_z + bend_y + torsion` and each bending/torsion part is
/// linear in its inertia.
#[derive(Debug, Clone)]
pub struct StiffnessParts {
    pub axial: Matrix12,
    pub bend_z: Matrix12,
    pub bend_y: Matrix12,
    pub torsion: Matrix12,
}

impl StiffnessParts {
    pub fn total(&self) -> Matrix12 {
        self.axial + self.bend_z + self.bend_y + self.torsion
    }
}

fn geometry_of(elem: &FrameElement, nodes: &[[f64; 3]], index: usize) -> Result<Geometry> {
    let (Some(a), Some(b)) = (nodes.get(elem.node_a), nodes.get(elem.node_b)) else {
        return Err(Error::InvalidElement { index, reason: "node index out of range".into() });
    };
    Geometry::new(*a, *b, elem.reference).ok_or_else(|| Error::InvalidElement {
        index,
        reason: "zero length or reference vector parallel to the axis".into(),
    })
}

/// Global stiffness parts, each evaluated with the element's own properties.
pub fn stiffness_parts(elem: &FrameElement, nodes: &[[f64; 3]], index: usize) -> Result<StiffnessParts> {
    elem.validate(index)?;
    let geo = geometry_of(elem, nodes, index)?;
    let l = geo.length;
    Ok(StiffnessParts {
        axial: geo.transform(&local_axial(elem.e * elem.area, l)),
        bend_z: geo.transform(&local_bending_z(elem.e * elem.iz, l)),
        bend_y: geo.transform(&local_bending_y(elem.e * elem.iy, l)),
        torsion: geo.transform(&local_torsion(elem.g * elem.j, l)),
    })
}

/// Global consistent mass of an element, scaled by `density` instead of the
/// element's own `rho`.
pub fn mass_with_density(elem: &FrameElement, nodes: &[[f64; 3]], index: usize, density: f64) -> Result<Matrix12> {
    elem.validate(index)?;
    let geo = geometry_of(elem, nodes, index)?;
    Ok(geo.transform(&local_mass(density * elem.area, density * elem.ip, geo.length)))
}

/// Global 12×12 stiffness and consistent mass of one element.
pub fn element_matrices(elem: &FrameElement, nodes: &[[f64; 3]]) -> Result<(Matrix12, Matrix12)> {
    let k = stiffness_parts(elem, nodes, 0)?.total();
    let m = mass_with_density(elem, nodes, 0, elem.rho)?;
    Ok((k, m))
}

/// Torsion constant of a solid `a × b` rectangle (`a >= b`), Roark's approximation.
pub fn rectangle_torsion(a: f64, b: f64) -> f64 {
    let (a, b) = if a >= b { (a, b) } else { (b, a) };
    a * b.powi(3) * (1.0 / 3.0 - 0.21 * (b / a) * (1.0 - b.powi(4) / (12.0 * a.powi(4))))
}
