use infolattice::analysis::tee_extract;
use infolattice::backend::EntropyBackend;
use infolattice::family::GenericFamily;
use infolattice::geometry::Geometry;
use infolattice::lattice::{
    build_generic_lattice, build_lattice, decomposition_check, BuildOptions,
};
use infolattice::models::reference::{cat_state, singlet_state, triangle_state};
use infolattice::models::toric::{
    electric_string, toric_open_patch, toric_plane_region, Generator,
};
use infolattice::models::twist::{toric_line_defect, toric_rough_patch, DefectPath, RoughSegment};
use infolattice::plan::{Axis, SubsystemPlan};
use infolattice::reduce::{info_per_multiscale, quasi1d_from_lattice, quasi1d_per_scale};
use infolattice::SubsystemIndex;

const TOL: f64 = 1e-9;

fn idx(nx: i64, ny: i64, lx: i64, ly: i64) -> SubsystemIndex {
    SubsystemIndex::new(nx, ny, lx, ly)
}

#[test]
fn triangle_loop_is_redundant() {
    let s = triangle_state();
    let family = GenericFamily::new(vec![
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![1, 2],
        vec![0, 2],
        vec![0, 1, 2],
    ])
    .unwrap();
    let g = build_generic_lattice(&s, &family).unwrap();
    for (m, v) in family.members().iter().zip(&g.local) {
        let want = match m.len() {
            1 => 0.0,
            2 => 1.0,
            _ => -1.0,
        };
        assert!((v - want).abs() < 1e-10, "{m:?}: {v}");
    }
}

#[test]
fn singlet_pairs_sit_at_enclosing_scales() {
    let s = singlet_state(6, 6, &[((0, 0), (2, 2)), ((0, 4), (4, 3))]).unwrap();
    let geo = Geometry::sites(6, 6);
    let (lat, table) =
        build_lattice(&s, &geo, &SubsystemPlan::Full, &BuildOptions::default()).unwrap();
    assert!(decomposition_check(&lat, &table).unwrap() < 1e-8);
    for (k, v) in &lat.entries {
        let want = if *k == idx(0, 0, 2, 2) || *k == idx(0, 3, 4, 1) {
            2.0
        } else if k.lx == 0 && k.ly == 0 {
            let paired = [(0, 0), (2, 2), (0, 4), (4, 3)].contains(&(k.nx, k.ny));
            if paired {
                0.0
            } else {
                1.0
            }
        } else {
            0.0
        };
        assert!((v - want).abs() < TOL, "{k}: {v}");
    }
    let ms = info_per_multiscale(&lat, None);
    assert!((ms[&(0, 0)] - 32.0).abs() < TOL);
    assert!((lat.total() - 36.0).abs() < TOL);

    let full = idx(0, 0, 5, 5);
    let q = quasi1d_from_lattice(&lat, &full, Axis::X);
    assert!((q[&(0, 2)] - 2.0).abs() < TOL);
    assert!((q[&(0, 4)] - 2.0).abs() < TOL);
    let per = quasi1d_per_scale(&q);
    assert!((per[&2] - 2.0).abs() < TOL);
    assert!((per[&4] - 2.0).abs() < TOL);
}

#[test]
fn cat_state_lattice() {
    let s = cat_state(36, 0.3).unwrap();
    let geo = Geometry::sites(6, 6);
    let (lat, table) =
        build_lattice(&s, &geo, &SubsystemPlan::Full, &BuildOptions::default()).unwrap();
    assert!(decomposition_check(&lat, &table).unwrap() < 1e-8);
    // I(C) = |C| - 1 on proper subsystems and |C| on the whole system.
    for (k, v) in &lat.entries {
        let want = match (k.lx, k.ly) {
            (5, 5) => 1.0,
            (1, 1) => -1.0,
            (1, 0) | (0, 1) => 1.0,
            _ => 0.0,
        };
        assert!((v - want).abs() < TOL, "{k}: {v}");
    }
    let q = quasi1d_from_lattice(&lat, &idx(0, 0, 5, 5), Axis::X);
    assert!(q.values().all(|&v| v > -TOL));
    let per = quasi1d_per_scale(&q);
    assert!((per[&5] - 1.0).abs() < TOL);
}

#[test]
fn toric_plane_region_is_local() {
    let (patch, geo) = toric_plane_region(6, 2).unwrap();
    let (lat, table) = build_lattice(
        &patch.tableau,
        &geo,
        &SubsystemPlan::Full,
        &BuildOptions::default(),
    )
    .unwrap();
    assert!(decomposition_check(&lat, &table).unwrap() < 1e-8);
    let mut bits = 0.0;
    for (k, v) in &lat.entries {
        let want = match (k.lx, k.ly) {
            (1, 1) => 1.0,
            (2, 2) => 1.0,
            _ => 0.0,
        };
        assert!((v - want).abs() < TOL, "{k}: {v}");
        bits += v;
    }
    // 36 plaquettes and 25 interior stars.
    assert!((bits - 61.0).abs() < TOL);

    let mut excited = patch.tableau.clone();
    excited.apply_pauli(&electric_string(&patch.layout, 5, 3, 7));
    let (lat2, _) = build_lattice(
        &excited,
        &geo,
        &SubsystemPlan::Full,
        &BuildOptions::default(),
    )
    .unwrap();
    assert_eq!(lat.entries.len(), lat2.entries.len());
    for (k, v) in &lat.entries {
        assert!((v - lat2.entries[k]).abs() < TOL, "{k}");
    }
}

#[test]
fn toric_open_patch_boundary_information() {
    let patch = toric_open_patch(6, 6).unwrap();
    assert_eq!(patch.dropped.len(), 1);
    assert!(matches!(patch.dropped[0], Generator::Star(..)));
    let geo = patch.geometry();
    let (lat, table) = build_lattice(
        &patch.tableau,
        &geo,
        &SubsystemPlan::Full,
        &BuildOptions::default(),
    )
    .unwrap();
    assert!(decomposition_check(&lat, &table).unwrap() < 1e-8);
    let (top, sum) = tee_extract(&lat);
    assert!((top - 1.0).abs() < TOL, "top {top}");
    assert!((sum - 1.0).abs() < TOL, "sum {sum}");
    // Edge stars along the bottom row sit with their two plaquettes.
    for x in 1..6 {
        let v = lat.entries[&idx(x - 1, 0, 2, 1)];
        assert!((v - 1.0).abs() < TOL, "edge star {x}: {v}");
    }
    // Corner stars share the corner plaquette subsystem.
    for (nx, ny) in [(0, 0), (5, 0), (0, 5), (5, 5)] {
        let v = lat.entries[&idx(nx, ny, 1, 1)];
        assert!((v - 2.0).abs() < TOL, "corner {nx},{ny}: {v}");
    }
    assert!((lat.total() - patch.tableau.num_sites() as f64).abs() < TOL);
}

#[test]
fn twist_patch_has_two_fold_degeneracy() {
    let path = DefectPath {
        start: (1, 1),
        length: 2,
    };
    let rough = RoughSegment { x0: 0, x1: 1 };
    let twist = toric_line_defect(3, 3, path, rough).unwrap();
    assert_eq!(twist.logical_qubits, 1);
    assert_eq!(twist.twists.len(), 2);
    let reference = toric_rough_patch(3, 3, rough).unwrap();
    assert_eq!(reference.logical_qubits, 0);
    assert_eq!(reference.tableau.num_sites(), twist.tableau.num_sites());
    assert!(!twist.tableau.is_pure());
    assert!(reference.tableau.is_pure());
}
