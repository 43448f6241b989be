mod common;

use common::{euler_bernoulli_hz, square_beam};
use fss_fem::fem::element::{element_matrices, Component, FrameElement};
use fss_fem::fem::modal::solve_modes_with_shapes;
use fss_fem::fem::{
    assemble, build_garteur, model_frequencies, remove_dofs, solve_modes, MeshConfig, ParameterVector,
    ParametricModel, DOF_PER_NODE, RIGID_THRESHOLD_HZ,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn cantilever_first_bending() {
    let (k, m) = assemble(&square_beam(20)).unwrap();
    let fixed: Vec<usize> = (0..DOF_PER_NODE).collect();
    let modes = solve_modes(&remove_dofs(&k, &fixed), &remove_dofs(&m, &fixed), 1).unwrap();
    assert_eq!(modes.rigid_mode_count, 0);
    let expected = euler_bernoulli_hz(1.875104);
    assert!(rel(modes.frequencies_hz[0], expected) < 0.01, "{} vs {expected}", modes.frequencies_hz[0]);
}

#[test]
fn free_free_first_bending() {
    let (k, m) = assemble(&square_beam(20)).unwrap();
    let modes = solve_modes(&k, &m, 1).unwrap();
    assert_eq!(modes.rigid_mode_count, 6);
    let expected = euler_bernoulli_hz(4.730041);
    assert!(rel(modes.frequencies_hz[0], expected) < 0.01, "{} vs {expected}", modes.frequencies_hz[0]);
}

#[test]
fn single_element_assembly_is_identity() {
    let mesh = square_beam(1);
    let (k, m) = assemble(&mesh).unwrap();
    let (ke, me) = element_matrices(&mesh.elements[0], &mesh.nodes).unwrap();
    for r in 0..12 {
        for c in 0..12 {
            assert_eq!(k[(r, c)], ke[(r, c)]);
            assert_eq!(m[(r, c)], me[(r, c)]);
        }
    }
}

#[test]
fn two_elements_have_six_dimensional_null_space() {
    let (k, m) = assemble(&square_beam(2)).unwrap();
    assert_eq!(k.nrows(), 18);
    let modes = solve_modes(&k, &m, 12).unwrap();
    assert_eq!(modes.rigid_mode_count, 6);
    assert_eq!(modes.frequencies_hz.len(), 12);
}

#[test]
fn density_scaling_scales_mass_only() {
    let mesh = build_garteur(&ParameterVector::INITIAL, &MeshConfig::default()).unwrap();
    let mut heavy = mesh.clone();
    for e in &mut heavy.elements {
        e.rho *= 3.0;
    }
    let (k1, m1) = assemble(&mesh).unwrap();
    let (k3, m3) = assemble(&heavy).unwrap();
    assert_eq!(k1, k3);
    let scale = m1.amax();
    assert!((&m1 * 3.0 - &m3).amax() <= 1e-12 * scale);

    let f1 = solve_modes(&k1, &m1, 10).unwrap().frequencies_hz;
    let f3 = solve_modes(&k3, &m3, 10).unwrap().frequencies_hz;
    for (a, b) in f1.iter().zip(&f3) {
        assert!(rel(*b, a / 3f64.sqrt()) < 1e-9, "{b} vs {}", a / 3f64.sqrt());
    }
}

#[test]
fn garteur_rigid_modes_and_residuals() {
    let mesh = build_garteur(&ParameterVector::INITIAL, &MeshConfig::default()).unwrap();
    let (k, m) = assemble(&mesh).unwrap();
    let scale = k.amax();
    assert!((&k - k.transpose()).amax() <= 1e-12 * scale);
    assert!((&m - m.transpose()).amax() <= 1e-12 * m.amax());

    let (modes, shapes) = solve_modes_with_shapes(&k, &m, 10).unwrap();
    assert_eq!(modes.rigid_mode_count, 6);
    assert!(modes.rigid_frequencies_hz.iter().all(|f| *f < 1e-3), "{:?}", modes.rigid_frequencies_hz);
    assert!(modes.frequencies_hz[0] > RIGID_THRESHOLD_HZ);
    assert!(modes.frequencies_hz.windows(2).all(|w| w[0] <= w[1]));
    for (lambda, phi) in &shapes {
        let kphi = &k * phi;
        let residual = (&kphi - &m * phi * *lambda).norm() / kphi.norm();
        assert!(residual <= 1e-8, "residual {residual}");
    }
}

#[test]
fn initial_vector_gives_single_digit_first_mode() {
    let f = model_frequencies(&ParameterVector::INITIAL, 10, &MeshConfig::default()).unwrap().frequencies_hz;
    assert_eq!(f.len(), 10);
    assert!(f[0] >= 1.0 && f[0] < 10.0, "{}", f[0]);
    assert!(f[9] > 10.0 && f[9] < 200.0, "{}", f[9]);
}

#[test]
fn left_wing_carries_table_values() {
    let mesh = build_garteur(&ParameterVector::INITIAL, &MeshConfig::default()).unwrap();
    let wing: Vec<_> = mesh.elements.iter().filter(|e| e.component == Component::LeftWing).collect();
    assert_eq!(wing.len(), MeshConfig::default().wing);
    for e in wing {
        assert_eq!((e.iz, e.iy, e.j), (8.3e-9, 8.3e-7, 4.0e-8));
    }
}

#[test]
fn r_itors_touches_only_right_wing_torsion() {
    let a = build_garteur(&ParameterVector::INITIAL, &MeshConfig::default()).unwrap();
    let p = ParameterVector { r_itors: 5.0e-8, ..ParameterVector::INITIAL };
    let b = build_garteur(&p, &MeshConfig::default()).unwrap();
    assert_eq!(a.nodes, b.nodes);
    for (ea, eb) in a.elements.iter().zip(&b.elements) {
        if ea.component == Component::RightWing {
            assert_eq!(eb.j, 5.0e-8);
            assert_eq!(FrameElement { j: ea.j, ..eb.clone() }, *ea);
        } else {
            assert_eq!(ea, eb);
        }
    }
    assert_eq!(a, build_garteur(&ParameterVector::INITIAL, &MeshConfig::default()).unwrap());
}

#[test]
fn doubling_density_divides_by_sqrt_two() {
    let cfg = MeshConfig::default();
    let f = model_frequencies(&ParameterVector::INITIAL, 10, &cfg).unwrap().frequencies_hz;
    let p = ParameterVector { rho: 2.0 * ParameterVector::INITIAL.rho, ..ParameterVector::INITIAL };
    let g = model_frequencies(&p, 10, &cfg).unwrap().frequencies_hz;
    for (a, b) in f.iter().zip(&g) {
        assert!(rel(*b, a / 2f64.sqrt()) < 1e-9);
    }
}

#[test]
fn stiffening_never_lowers_a_frequency() {
    let model = ParametricModel::new(MeshConfig::COARSE).unwrap();
    let base = ParameterVector::INITIAL.to_array();
    let f0 = model.frequencies(&ParameterVector::INITIAL, 10).unwrap().frequencies_hz;
    for d in 1..ParameterVector::DIM {
        for factor in [1.1, 1.5, 3.0] {
            let mut x = base;
            x[d] *= factor;
            let f = model.frequencies(&ParameterVector::from_slice(&x).unwrap(), 10).unwrap().frequencies_hz;
            for (a, b) in f0.iter().zip(&f) {
                assert!(*b >= a * (1.0 - 1e-10), "param {d} x{factor}: {b} < {a}");
            }
        }
    }
    let mut all = base;
    for v in &mut all[1..] {
        *v *= 1.2;
    }
    let f = model.frequencies(&ParameterVector::from_slice(&all).unwrap(), 10).unwrap().frequencies_hz;
    assert!(f0.iter().zip(&f).all(|(a, b)| *b >= a * (1.0 - 1e-10)));
}

#[test]
fn node_renumbering_is_invisible() {
    let mesh = build_garteur(&ParameterVector::INITIAL, &MeshConfig::default()).unwrap();
    let n = mesh.nodes.len();
    // Reverse, then rotate, so every node moves.
    let perm: Vec<usize> = (0..n).map(|i| (n - 1 - i + 7) % n).collect();
    let shuffled = mesh.renumbered(&perm);
    let (k, m) = assemble(&mesh).unwrap();
    let (ks, ms) = assemble(&shuffled).unwrap();
    let a = solve_modes(&k, &m, 10).unwrap().frequencies_hz;
    let b = solve_modes(&ks, &ms, 10).unwrap().frequencies_hz;
    for (x, y) in a.iter().zip(&b) {
        assert!(rel(*y, *x) < 1e-9, "{x} vs {y}");
    }
}

#[test]
fn refinement_changes_frequencies_by_less_than_half_a_percent() {
    let cfg = MeshConfig::default();
    let f = model_frequencies(&ParameterVector::INITIAL, 10, &cfg).unwrap().frequencies_hz;
    let g = model_frequencies(&ParameterVector::INITIAL, 10, &cfg.doubled()).unwrap().frequencies_hz;
    for (a, b) in f.iter().zip(&g) {
        assert!(rel(*b, *a) < 0.005, "{a} -> {b}");
    }
}

#[test]
fn coarse_mesh_stays_within_one_percent_of_default() {
    let f = model_frequencies(&ParameterVector::INITIAL, 10, &MeshConfig::default()).unwrap().frequencies_hz;
    let g = model_frequencies(&ParameterVector::INITIAL, 10, &MeshConfig::COARSE).unwrap().frequencies_hz;
    for (a, b) in f.iter().zip(&g) {
        assert!(rel(*b, *a) < 0.01, "{a} vs coarse {b}");
    }
}

#[test]
fn parametric_route_matches_direct_assembly() {
    let p = ParameterVector {
        rho: 2400.0,
        vtp_imin: 9.0e-9,
        l_imin: 7.5e-9,
        l_imax: 9.1e-7,
        l_itors: 3.6e-8,
        r_imin: 9.9e-9,
        r_imax: 7.7e-7,
        r_itors: 4.4e-8,
    };
    for cfg in [MeshConfig::COARSE, MeshConfig::default()] {
        let direct = model_frequencies(&p, 10, &cfg).unwrap().frequencies_hz;
        let fast = ParametricModel::new(cfg).unwrap().frequencies(&p, 10).unwrap().frequencies_hz;
        for (a, b) in direct.iter().zip(&fast) {
            assert!(rel(*b, *a) < 1e-7, "{a} vs {b}");
        }
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    let bad = ParameterVector { l_imax: -1.0, ..ParameterVector::INITIAL };
    assert!(build_garteur(&bad, &MeshConfig::default()).is_err());
    let mut mesh = square_beam(2);
    mesh.elements[1].area = 0.0;
    assert!(assemble(&mesh).is_err());

    let mut split = square_beam(3);
    split.elements.remove(1);
    assert!(assemble(&split).is_err());

    let (k, m) = assemble(&square_beam(2)).unwrap();
    assert!(solve_modes(&k, &m, 13).is_err());
    assert!(solve_modes(&k, &(-m), 1).is_err());
}
