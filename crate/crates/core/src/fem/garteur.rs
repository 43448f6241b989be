//! Beam-frame model of a small GARTEUR-style aeroplane.
//!
//! Global axes: `x` aft along the fuselage, `y` to the left wing tip, `z` up.
//! The fuselage is a 1.5 m beam of 0.05 m × 0.15 m aluminium section. The
//! wings (1.5 m each side, 3 m span) are 0.1 m × 0.01 m plates attached at
//! one third of the fuselage length. A 0.5 m vertical tail stands on the
//! aft end of the fuselage and carries a horizontal tail (0.4 m each side)
//! at its tip, T-tail fashion. All mass comes from element density; there
//! are no lumped masses and no supports (free-free).
//!
//! The updating vector sets the common density, the vertical tail's minor
//! bending inertia and the three inertias of each wing. Inertias map to
//! local axes as `I_min -> iz`, `I_max -> iy`, `I_tors -> j`; local `y` is
//! vertical for the wings and lateral for the vertical tail, so `I_min`
//! always governs the flexible out-of-plane bending.

use serde::{Deserialize, Serialize};

use super::element::{rectangle_torsion, Component, FrameElement};
use super::mesh::{assemble, Mesh};
use super::modal::{solve_modes, ModalResult};
use crate::error::{Error, Result};

pub const YOUNGS_MODULUS: f64 = 70e9;
pub const POISSON_RATIO: f64 = 0.3;

pub const FUSELAGE_LENGTH: f64 = 1.5;
pub const FUSELAGE_WIDTH: f64 = 0.05;
pub const FUSELAGE_DEPTH: f64 = 0.15;
pub const WING_SEMI_SPAN: f64 = 1.5;
pub const VERTICAL_TAIL_HEIGHT: f64 = 0.5;
pub const HORIZONTAL_TAIL_SEMI_SPAN: f64 = 0.4;
pub const PLATE_CHORD: f64 = 0.1;
pub const PLATE_THICKNESS: f64 = 0.01;

/// Fixed in-plane inertia of the vertical tail and both inertias of the
/// horizontal tail, m^4.
pub const TAIL_I_MAX: f64 = 8.3e-7;
pub const TAIL_I_MIN: f64 = 8.3e-9;
pub const TAIL_I_TORS: f64 = 4.0e-8;

pub fn shear_modulus() -> f64 {
    YOUNGS_MODULUS / (2.0 * (1.0 + POISSON_RATIO))
}

/// The eight updated quantities, in updating-vector order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterVector {
    /// kg/m^3
    pub rho: f64,
    pub vtp_imin: f64,
    pub l_imin: f64,
    pub l_imax: f64,
    pub l_itors: f64,
    pub r_imin: f64,
    pub r_imax: f64,
    pub r_itors: f64,
}

impl ParameterVector {
    pub const DIM: usize = 8;
    pub const NAMES: [&'static str; 8] =
        ["rho", "vtp_imin", "l_imin", "l_imax", "l_itors", "r_imin", "r_imax", "r_itors"];

    /// Nominal starting values.
    pub const INITIAL: ParameterVector = ParameterVector {
        rho: 2700.0,
        vtp_imin: 8.3e-9,
        l_imin: 8.3e-9,
        l_imax: 8.3e-7,
        l_itors: 4.0e-8,
        r_imin: 8.3e-9,
        r_imax: 8.3e-7,
        r_itors: 4.0e-8,
    };

    pub fn to_array(&self) -> [f64; 8] {
        [self.rho, self.vtp_imin, self.l_imin, self.l_imax, self.l_itors, self.r_imin, self.r_imax, self.r_itors]
    }

    pub fn from_slice(x: &[f64]) -> Result<Self> {
        let &[rho, vtp_imin, l_imin, l_imax, l_itors, r_imin, r_imax, r_itors] = x else {
            return Err(Error::DimensionMismatch { expected: Self::DIM, actual: x.len() });
        };
        Ok(Self { rho, vtp_imin, l_imin, l_imax, l_itors, r_imin, r_imax, r_itors })
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in Self::NAMES.iter().zip(self.to_array()) {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(())
    }
}

impl Default for ParameterVector {
    fn default() -> Self {
        Self::INITIAL
    }
}

/// Element counts of the aeroplane mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeshConfig {
    /// Must be a multiple of 3 so the wing root falls on a node.
    pub fuselage: usize,
    /// Per wing.
    pub wing: usize,
    pub vertical_tail: usize,
    /// Total over both sides; must be even.
    pub horizontal_tail: usize,
}

impl Default for MeshConfig {
    fn default() -> Self {
        Self { fuselage: 12, wing: 12, vertical_tail: 4, horizontal_tail: 4 }
    }
}

impl MeshConfig {
    /// Smallest mesh that still places the first ten elastic frequencies
    /// within 1% of the default mesh. Used where many thousands of
    /// evaluations are needed.
    pub const COARSE: MeshConfig = MeshConfig { fuselage: 3, wing: 3, vertical_tail: 1, horizontal_tail: 2 };

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSettings(format!("mesh: {msg}")));
        if self.fuselage == 0 || self.fuselage % 3 != 0 {
            return bad("fuselage element count must be a positive multiple of 3");
        }
        if self.wing == 0 || self.vertical_tail == 0 {
            return bad("wing and vertical tail need at least one element");
        }
        if self.horizontal_tail == 0 || self.horizontal_tail % 2 != 0 {
            return bad("horizontal tail element count must be positive and even");
        }
        Ok(())
    }

    pub fn doubled(&self) -> Self {
        Self {
            fuselage: 2 * self.fuselage,
            wing: 2 * self.wing,
            vertical_tail: 2 * self.vertical_tail,
            horizontal_tail: 2 * self.horizontal_tail,
        }
    }
}

/// Section inertias `(iz, iy, j)` of a component and, for each, the index
/// in the updating vector that controls it (if any).
pub(crate) fn section_inertias(component: Component, p: &ParameterVector) -> ([f64; 3], [Option<usize>; 3]) {
    match component {
        Component::Fuselage => {
            let (b, h) = (FUSELAGE_WIDTH, FUSELAGE_DEPTH);
            ([h * b.powi(3) / 12.0, b * h.powi(3) / 12.0, rectangle_torsion(h, b)], [None; 3])
        }
        Component::LeftWing => ([p.l_imin, p.l_imax, p.l_itors], [Some(2), Some(3), Some(4)]),
        Component::RightWing => ([p.r_imin, p.r_imax, p.r_itors], [Some(5), Some(6), Some(7)]),
        Component::VerticalTail => ([p.vtp_imin, TAIL_I_MAX, TAIL_I_TORS], [Some(1), None, None]),
        Component::HorizontalTail | Component::Other => ([TAIL_I_MIN, TAIL_I_MAX, TAIL_I_TORS], [None; 3]),
    }
}

fn section_area_polar(component: Component) -> (f64, f64) {
    match component {
        Component::Fuselage => {
            let (b, h) = (FUSELAGE_WIDTH, FUSELAGE_DEPTH);
            (b * h, b * h * (b * b + h * h) / 12.0)
        }
        _ => {
            let (c, t) = (PLATE_CHORD, PLATE_THICKNESS);
            (c * t, c * t * (c * c + t * t) / 12.0)
        }
    }
}

struct Builder<'a> {
    p: &'a ParameterVector,
    mesh: Mesh,
}

impl Builder<'_> {
    fn node(&mut self, x: [f64; 3]) -> usize {
        self.mesh.nodes.push(x);
        self.mesh.nodes.len() - 1
    }

    /// Chain of `count` elements from existing node `start` along `dir`.
    fn chain(&mut self, start: usize, dir: [f64; 3], length: f64, count: usize, component: Component, reference: [f64; 3]) -> usize {
        let origin = self.mesh.nodes[start];
        let (area, ip) = section_area_polar(component);
        let ([iz, iy, j], _) = section_inertias(component, self.p);
        let mut prev = start;
        for k in 1..=count {
            let s = length * k as f64 / count as f64;
            let next = self.node([origin[0] + s * dir[0], origin[1] + s * dir[1], origin[2] + s * dir[2]]);
            self.mesh.elements.push(FrameElement {
                node_a: prev,
                node_b: next,
                component,
                e: YOUNGS_MODULUS,
                g: shear_modulus(),
                rho: self.p.rho,
                area,
                iy,
                iz,
                j,
                ip,
                reference,
            });
            prev = next;
        }
        prev
    }
}

/// Builds the aeroplane mesh for parameters `p`.
pub fn build_garteur(p: &ParameterVector, config: &MeshConfig) -> Result<Mesh> {
    p.validate()?;
    config.validate()?;
    const X: [f64; 3] = [1.0, 0.0, 0.0];
    const Y: [f64; 3] = [0.0, 1.0, 0.0];
    const NEG_Y: [f64; 3] = [0.0, -1.0, 0.0];
    const Z: [f64; 3] = [0.0, 0.0, 1.0];

    let mut b = Builder { p, mesh: Mesh { nodes: Vec::new(), elements: Vec::new() } };
    let nose = b.node([0.0, 0.0, 0.0]);
    let tail = b.chain(nose, X, FUSELAGE_LENGTH, config.fuselage, Component::Fuselage, Y);
    let wing_root = nose + config.fuselage / 3;
    b.chain(wing_root, Y, WING_SEMI_SPAN, config.wing, Component::LeftWing, Z);
    b.chain(wing_root, NEG_Y, WING_SEMI_SPAN, config.wing, Component::RightWing, Z);
    let fin_tip = b.chain(tail, Z, VERTICAL_TAIL_HEIGHT, config.vertical_tail, Component::VerticalTail, Y);
    let per_side = config.horizontal_tail / 2;
    b.chain(fin_tip, Y, HORIZONTAL_TAIL_SEMI_SPAN, per_side, Component::HorizontalTail, Z);
    b.chain(fin_tip, NEG_Y, HORIZONTAL_TAIL_SEMI_SPAN, per_side, Component::HorizontalTail, Z);
    Ok(b.mesh)
}

/// Lowest `n` elastic frequencies of the free-free aeroplane, by direct
/// assembly and eigen-solution.
pub fn model_frequencies(p: &ParameterVector, n: usize, config: &MeshConfig) -> Result<ModalResult> {
    let mesh = build_garteur(p, config)?;
    let (k, m) = assemble(&mesh)?;
    solve_modes(&k, &m, n)
}
