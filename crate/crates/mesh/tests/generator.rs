//! Shell mesh generator: construction invariants, tagging, convergence of
//! the polyhedral volume to the exact shell volume, and parameter checking.

use std::collections::BTreeSet;

use approx::assert_relative_eq;
use mesh::{gen_shell_mesh, validate, BoundaryTag, MeshError};

const OUTER_R: f64 = 1.0;
const INNER_R: f64 = 0.5;

/// Exact volume of the shell between radii 0.5 and 1.
fn exact_volume() -> f64 {
    4.0 / 3.0 * std::f64::consts::PI * (1.0 - 0.125)
}

fn radius(p: [f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

#[test]
fn level0_shell_is_valid_with_radii_inside_the_shell() {
    let m = gen_shell_mesh(OUTER_R, INNER_R, 0).unwrap();
    validate(&m).unwrap();
    for &v in m.vertices() {
        let r = radius(v);
        assert!(
            (INNER_R - 1e-9..=OUTER_R + 1e-9).contains(&r),
            "vertex radius {r} outside the shell"
        );
    }
}

#[test]
fn mesh_sizes_fixed_by_construction() {
    // Icosahedral layers: 12·4^L sphere vertices per layer, levels+2 layers,
    // 3 tets per prism, 20·4^L triangles per sphere.
    let expect = [(24, 60, 40), (126, 480, 160), (648, 2880, 640), (3210, 15360, 2560)];
    for (levels, (nv, nt, nb)) in expect.into_iter().enumerate() {
        let m = gen_shell_mesh(OUTER_R, INNER_R, levels).unwrap();
        assert_eq!(m.nverts(), nv, "levels={levels} vertex count");
        assert_eq!(m.ntets(), nt, "levels={levels} element count");
        assert_eq!(m.boundary_faces().len(), nb, "levels={levels} boundary count");
    }
}

#[test]
fn radial_layer_count_is_levels_plus_two() {
    for levels in 0..=3 {
        let m = gen_shell_mesh(OUTER_R, INNER_R, levels).unwrap();
        let radii: BTreeSet<i64> = m
            .vertices()
            .iter()
            .map(|&v| (radius(v) * 1e6).round() as i64)
            .collect();
        assert_eq!(radii.len(), levels + 2, "levels={levels}");
    }
}

#[test]
fn volume_deficit_below_five_percent_at_two_subdivisions() {
    let m = gen_shell_mesh(OUTER_R, INNER_R, 2).unwrap();
    let vol = m.total_volume();
    assert_relative_eq!(vol, 3.541164, max_relative = 1e-5);
    let deficit = (exact_volume() - vol) / exact_volume();
    assert!(deficit > 0.0, "polyhedral mesh must underestimate the shell");
    assert!(deficit < 0.05, "volume deficit {deficit:.4} not below 5%");
}

#[test]
fn volume_deficit_shrinks_with_subdivision_level() {
    let deficits: Vec<f64> = (0..=3)
        .map(|levels| {
            let m = gen_shell_mesh(OUTER_R, INNER_R, levels).unwrap();
            (exact_volume() - m.total_volume()) / exact_volume()
        })
        .collect();
    for pair in deficits.windows(2) {
        assert!(pair[1] < pair[0], "deficits not decreasing: {deficits:?}");
    }
    assert_relative_eq!(deficits[0], 0.3945, max_relative = 1e-3);
    assert_relative_eq!(deficits[3], 0.0086, max_relative = 1e-2);
}

#[test]
fn boundary_tags_follow_vertex_radius() {
    let m = gen_shell_mesh(OUTER_R, INNER_R, 2).unwrap();
    let mut seen_obstacle = 0;
    let mut seen_outer = 0;
    for bf in m.boundary_faces() {
        let target = match bf.tag {
            BoundaryTag::Obstacle => {
                seen_obstacle += 1;
                INNER_R
            }
            BoundaryTag::Outer => {
                seen_outer += 1;
                OUTER_R
            }
        };
        for &v in &bf.vertices {
            assert_relative_eq!(radius(m.vertex(v)), target, max_relative = 1e-12);
        }
    }
    assert_eq!(seen_obstacle + seen_outer, m.boundary_faces().len());
    assert_eq!(seen_obstacle, seen_outer, "spheres subdivide identically");
}

#[test]
fn h_max_shrinks_with_subdivision_level() {
    let h: Vec<f64> = (0..=3)
        .map(|levels| gen_shell_mesh(OUTER_R, INNER_R, levels).unwrap().h_max())
        .collect();
    for pair in h.windows(2) {
        assert!(pair[1] < pair[0], "h_max not decreasing: {h:?}");
    }
    assert_relative_eq!(h[1], 0.6180, max_relative = 1e-3);
}

#[test]
fn degenerate_parameters_are_construction_errors() {
    let cases = [
        (0.5, 0.5),  // equal radii
        (0.5, 1.0),  // inner outside outer
        (1.0, 0.0),  // zero inner
        (1.0, -0.2), // negative inner
        (f64::NAN, 0.5),
        (f64::INFINITY, 0.5),
        (1.0, f64::NAN),
    ];
    for (outer, inner) in cases {
        let got = gen_shell_mesh(outer, inner, 1);
        assert!(
            matches!(got, Err(MeshError::Construction { .. })),
            "expected construction error for outer={outer}, inner={inner}"
        );
    }
    // Subdivision depth is capped to keep memory bounded.
    assert!(matches!(
        gen_shell_mesh(OUTER_R, INNER_R, 7),
        Err(MeshError::Construction { .. })
    ));
}

#[test]
fn generated_meshes_have_projection_metadata_and_no_stragglers() {
    let m = gen_shell_mesh(OUTER_R, INNER_R, 1).unwrap();
    let proj = m.projection().expect("generated shells know their spheres");
    assert_eq!(proj.obstacle_radius, INNER_R);
    assert_eq!(proj.outer_radius, OUTER_R);
    assert!(m.unsnapped().is_empty());
}
