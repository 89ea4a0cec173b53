//! Conforming bisection refinement: identity on empty marks, growth on full
//! marks, conformity under random marks, sphere snapping, h_max monotone
//! decrease, and the runaway-cascade guard.

use std::collections::HashSet;

use approx::assert_relative_eq;
use mesh::{
    gen_shell_mesh, refine, signed_volume, uniform_refine, validate, BoundaryFace, BoundaryTag,
    MarkSet, MeshError, TetMesh,
};
use proptest::prelude::*;

fn shell(levels: usize) -> TetMesh {
    gen_shell_mesh(1.0, 0.5, levels).unwrap()
}

/// Chain of tetrahedra along a growing spiral: consecutive elements share
/// exactly one edge, and each element's longest edge is the one it shares
/// with the next, so refining the first element forces closure to walk the
/// entire chain. Used as the runaway-cascade fixture.
fn spiral_chain(n: usize, gamma: f64) -> TetMesh {
    let step = 0.85 * std::f64::consts::PI;
    let pts: Vec<[f64; 3]> = (0..n + 2)
        .map(|i| {
            let r = gamma.powi(i as i32);
            let th = step * i as f64;
            [r * th.cos(), r * th.sin(), 0.0]
        })
        .collect();
    let mut verts = pts.clone();
    let mut tets = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b, c) = (pts[i], pts[i + 1], pts[i + 2]);
        let apex = [
            (a[0] + b[0] + c[0]) / 3.0,
            (a[1] + b[1] + c[1]) / 3.0,
            0.2 * gamma.powi(i as i32 + 2),
        ];
        verts.push(apex);
        let apex_idx = verts.len() - 1;
        let mut tet = [i, i + 1, i + 2, apex_idx];
        let coords = [verts[tet[0]], verts[tet[1]], verts[tet[2]], verts[tet[3]]];
        if signed_volume(&coords) < 0.0 {
            tet.swap(0, 1);
        }
        tets.push(tet);
    }
    // Every face is on the boundary of the chain; tag the first element's
    // faces as obstacle so both tags occur.
    let mut faces: Vec<BoundaryFace> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for tet in &tets {
        for f in [
            [tet[1], tet[2], tet[3]],
            [tet[0], tet[2], tet[3]],
            [tet[0], tet[1], tet[3]],
            [tet[0], tet[1], tet[2]],
        ] {
            let mut key = f;
            key.sort_unstable();
            *seen.entry(key).or_insert(0) += 1;
        }
    }
    for (ti, tet) in tets.iter().enumerate() {
        for f in [
            [tet[1], tet[2], tet[3]],
            [tet[0], tet[2], tet[3]],
            [tet[0], tet[1], tet[3]],
            [tet[0], tet[1], tet[2]],
        ] {
            let mut key = f;
            key.sort_unstable();
            if seen[&key] == 1 {
                faces.push(BoundaryFace {
                    vertices: f,
                    tag: if ti == 0 { BoundaryTag::Obstacle } else { BoundaryTag::Outer },
                });
            }
        }
    }
    TetMesh::from_parts(verts, tets, faces, None).unwrap()
}

#[test]
fn empty_marks_return_identical_mesh() {
    let m = shell(1);
    let r = refine(&m, &MarkSet::new()).unwrap();
    assert_eq!(m.vertices(), r.vertices());
    assert_eq!(m.tets(), r.tets());
    assert_eq!(m.boundary_faces(), r.boundary_faces());
}

#[test]
fn marking_all_at_least_doubles_and_validates() {
    let m = shell(1);
    let r = refine(&m, &MarkSet::all(m.ntets())).unwrap();
    validate(&r).unwrap();
    assert!(
        r.ntets() >= 2 * m.ntets(),
        "{} -> {} elements",
        m.ntets(),
        r.ntets()
    );
}

#[test]
fn hundred_random_mark_sets_keep_the_mesh_valid() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let base = shell(1);
    for case in 0..100 {
        let p = rng.gen_range(0.005..0.2);
        let marks = MarkSet::from_indices((0..base.ntets()).filter(|_| rng.gen_bool(p)));
        let r = refine(&base, &marks).unwrap();
        validate(&r).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert!(r.ntets() >= base.ntets() + marks.len());
    }
}

#[test]
fn marked_elements_are_strictly_refined_and_untouched_ones_survive() {
    let m = shell(1);
    let marks = MarkSet::from_indices([87usize]);
    let r = refine(&m, &marks).unwrap();

    // Splits replace one parent by two children each.
    let splits = r.ntets() - m.ntets();
    assert_eq!(splits, 55, "closure size of the worst single mark");

    let before: HashSet<[usize; 4]> = m.tets().iter().copied().collect();
    let after: HashSet<[usize; 4]> = r.tets().iter().copied().collect();
    assert!(
        !after.contains(&m.tet(87)),
        "marked element must not survive refinement"
    );
    let survivors = before.intersection(&after).count();
    assert_eq!(survivors, m.ntets() - splits);

    // Original vertices are untouched, new ones appended.
    assert_eq!(&r.vertices()[..m.nverts()], m.vertices());
}

#[test]
fn uniform_refinement_shrinks_h_and_grows_volume_toward_exact() {
    let mut m = shell(1);
    let exact = 4.0 / 3.0 * std::f64::consts::PI * 0.875;
    let mut h_prev = m.h_max();
    let mut vol_prev = m.total_volume();
    let expected_h = [0.5465, 0.4595, 0.2857];
    let expected_tets = [1748, 6515, 24121];
    for round in 0..3 {
        m = uniform_refine(&m).unwrap();
        assert_eq!(m.ntets(), expected_tets[round], "round {round} element count");
        let h = m.h_max();
        assert!(h <= h_prev, "h_max grew in round {round}");
        assert_relative_eq!(h, expected_h[round], max_relative = 1e-3);
        let vol = m.total_volume();
        assert!(
            vol > vol_prev && vol < exact,
            "round {round}: volume {vol} not between previous {vol_prev} and exact {exact}"
        );
        assert!(m.unsnapped().is_empty(), "uniform refinement never blocks a snap");
        h_prev = h;
        vol_prev = vol;
    }
}

#[test]
fn new_boundary_vertices_sit_on_their_spheres() {
    let m = shell(1);
    let r = uniform_refine(&m).unwrap();
    for bf in r.boundary_faces() {
        let target = match bf.tag {
            BoundaryTag::Obstacle => 0.5,
            BoundaryTag::Outer => 1.0,
        };
        for &v in &bf.vertices {
            let p = r.vertex(v);
            let radius = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert_relative_eq!(radius, target, max_relative = 1e-12);
        }
    }
}

#[test]
fn imported_meshes_are_refined_without_projection() {
    // Round-trip through the exchange format drops the sphere metadata, so
    // refinement must keep new boundary vertices at plain midpoints.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shell.msh");
    let m = shell(0);
    mesh::export_msh(&m, &path).unwrap();
    let imported = mesh::import_msh(&path).unwrap();
    assert!(imported.projection().is_none());

    let r = uniform_refine(&imported).unwrap();
    // Midpoints of outer chords stay strictly inside the sphere.
    let off_sphere = r
        .boundary_faces()
        .iter()
        .filter(|bf| bf.tag == BoundaryTag::Outer)
        .flat_map(|bf| bf.vertices)
        .any(|v| {
            let p = r.vertex(v);
            (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt() < 1.0 - 1e-6
        });
    assert!(off_sphere, "imported refinement must not snap to spheres");
}

#[test]
fn invalid_marks_are_rejected() {
    let m = shell(0);
    let marks = MarkSet::from_indices([m.ntets()]);
    assert!(matches!(
        refine(&m, &marks),
        Err(MeshError::InvalidMarks { .. })
    ));
}

#[test]
fn runaway_closure_cascade_is_cut_off() {
    // Short chains refine fine, with closure walking the whole chain.
    let ok = spiral_chain(80, 1.08);
    let refined = refine(&ok, &MarkSet::from_indices([0usize])).unwrap();
    assert_eq!(refined.ntets() - ok.ntets(), 2 * 80 - 1);

    // Long chains overrun the budget and abort with the diagnostic.
    let bad = spiral_chain(300, 1.08);
    match refine(&bad, &MarkSet::from_indices([0usize])) {
        Err(MeshError::RefinementCascade { splits, limit }) => {
            assert!(splits > limit, "{splits} vs {limit}");
            assert_eq!(limit, 20 + 320 + 300 / 4);
        }
        other => panic!("expected cascade error, got {other:?}"),
    }
    let msg = refine(&bad, &MarkSet::from_indices([0usize]))
        .unwrap_err()
        .to_string();
    assert!(msg.contains("refinement closure cascaded"), "{msg}");
    assert!(msg.contains("pathological"), "{msg}");
}

#[test]
fn blocked_snaps_keep_midpoints_and_are_recorded() {
    // Deterministic random hammering of the coarsest shell manufactures
    // elements thinner than the gap between a coarse boundary chord and its
    // sphere; the snap of that chord's midpoint must then back off.
    let mut lcg = 0x2545F4914F6CDD1Du64;
    let mut rand01 = move || {
        lcg = lcg
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (lcg >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut m = shell(0);
    for _round in 0..10 {
        let p = 0.02 + 0.10 * rand01();
        let marks = MarkSet::from_indices((0..m.ntets()).filter(|_| rand01() < p));
        if marks.is_empty() {
            continue;
        }
        m = refine(&m, &marks).unwrap();
    }
    assert!(
        !m.unsnapped().is_empty(),
        "fixture no longer produces blocked snaps; pick a new seed"
    );
    validate(&m).unwrap();

    // Recorded vertices are genuinely off their sphere; everything else on
    // the boundary sits on it.
    let proj = m.projection().unwrap();
    let mut found_off_sphere = false;
    for bf in m.boundary_faces() {
        let target = match bf.tag {
            BoundaryTag::Obstacle => proj.obstacle_radius,
            BoundaryTag::Outer => proj.outer_radius,
        };
        for &v in &bf.vertices {
            let p = m.vertex(v);
            let radius = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            let on_sphere = (radius - target).abs() <= 1e-9 * target;
            if m.unsnapped().binary_search(&v).is_ok() {
                found_off_sphere |= !on_sphere;
            } else {
                assert!(on_sphere, "unrecorded vertex {v} off its sphere");
            }
        }
    }
    assert!(found_off_sphere, "recorded stragglers should be off-sphere");
}

#[test]
fn mark_set_has_set_semantics() {
    let marks = MarkSet::from_indices([5usize, 3, 5, 3, 5]);
    assert_eq!(marks.len(), 2);
    assert!(marks.contains(3) && marks.contains(5));
    let mut marks = marks;
    assert!(!marks.insert(5), "duplicate insert must report false");
    assert!(marks.insert(7));
    assert_eq!(marks.max_index(), Some(7));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Any mark set on the shell yields a valid conforming mesh where every
    /// marked element is gone (strictly refined), the element count grows
    /// accordingly, and h_max never increases.
    #[test]
    fn refinement_properties_hold_for_random_marks(
        seed in 0u64..1 << 48,
        p in 0.002f64..0.3,
        levels in 0usize..2,
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let base = shell(levels);
        let marks = MarkSet::from_indices((0..base.ntets()).filter(|_| rng.gen_bool(p)));
        let r = refine(&base, &marks).unwrap();
        validate(&r).unwrap();

        prop_assert!(r.ntets() >= base.ntets() + marks.len());
        prop_assert!(r.h_max() <= base.h_max() * (1.0 + 1e-12));
        let after: HashSet<[usize; 4]> = r.tets().iter().copied().collect();
        for t in marks.iter() {
            prop_assert!(!after.contains(&base.tet(t)), "marked element {t} survived");
        }
    }

    /// Refining twice with independent random marks keeps everything valid
    /// (exercises inherited straggler records and incidence rebuilds).
    #[test]
    fn chained_refinement_stays_valid(seed in 0u64..1 << 48) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = shell(0);
        for _ in 0..3 {
            let p = rng.gen_range(0.01..0.25);
            let marks = MarkSet::from_indices((0..m.ntets()).filter(|_| rng.gen_bool(p)));
            let next = refine(&m, &marks).unwrap();
            validate(&next).unwrap();
            prop_assert!(next.ntets() >= m.ntets());
            m = next;
        }
    }
}
