//! Prints measured properties of generated shell meshes and of the
//! refinement engine: polyhedral volumes against the exact shell volume,
//! element counts, mesh sizes, closure cascade ratios for uniform, single,
//! and random mark sets, and the behavior on a deliberately pathological
//! chain mesh built to make longest-edge closure cascade.

use mesh::{
    gen_shell_mesh, refine, signed_volume, uniform_refine, BoundaryFace, BoundaryTag, MarkSet,
    TetMesh,
};

/// Chain of tetrahedra along a growing spiral. Consecutive tets share exactly
/// one edge, and each tet's longest edge is the edge it shares with the next,
/// so refining the first tet forces closure to walk the whole chain.
fn spiral_chain(n: usize, gamma: f64) -> TetMesh {
    let step = 0.85 * std::f64::consts::PI;
    let mut pts: Vec<[f64; 3]> = (0..n + 2)
        .map(|i| {
            let r = gamma.powi(i as i32);
            let th = step * i as f64;
            [r * th.cos(), r * th.sin(), 0.0]
        })
        .collect();
    let base = pts.clone();
    let mut tets = Vec::new();
    let mut bfaces = Vec::new();
    for i in 0..n {
        let (a, b, c) = (base[i], base[i + 1], base[i + 2]);
        let apex = [
            (a[0] + b[0] + c[0]) / 3.0,
            (a[1] + b[1] + c[1]) / 3.0,
            0.2 * gamma.powi(i as i32 + 2),
        ];
        pts.push(apex);
        let ap = pts.len() - 1;
        let mut tet = [i, i + 1, i + 2, ap];
        let coords = [pts[tet[0]], pts[tet[1]], pts[tet[2]], pts[tet[3]]];
        if signed_volume(&coords) < 0.0 {
            tet.swap(0, 1);
        }
        tets.push(tet);
        let tag = if i == 0 {
            BoundaryTag::Obstacle
        } else {
            BoundaryTag::Outer
        };
        for f in [
            [tet[0], tet[1], tet[2]],
            [tet[0], tet[1], tet[3]],
            [tet[0], tet[2], tet[3]],
            [tet[1], tet[2], tet[3]],
        ] {
            bfaces.push(BoundaryFace { vertices: f, tag });
        }
    }
    TetMesh::from_parts(pts, tets, bfaces, None).expect("chain mesh is valid")
}

fn single_mark_scan(base: &TetMesh) -> (usize, usize) {
    let mut max_splits = 0usize;
    let mut argmax = 0usize;
    for t in 0..base.ntets() {
        let marks = MarkSet::from_indices([t]);
        let r = refine(base, &marks).expect("single-mark refine");
        let splits = r.ntets() - base.ntets();
        if splits > max_splits {
            max_splits = splits;
            argmax = t;
        }
    }
    (max_splits, argmax)
}

fn main() {
    let exact = 4.0 * std::f64::consts::PI / 3.0 * (1.0 - 0.125);
    println!("exact shell volume (R'=0.5, R=1): {exact:.6}");
    println!("levels  nverts  ntets  nbfaces  volume    deficit   h_max   n_radii");
    for levels in 0..=3 {
        let m = gen_shell_mesh(1.0, 0.5, levels).expect("valid shell");
        let vol = m.total_volume();
        let mut radii: Vec<i64> = m
            .vertices()
            .iter()
            .map(|v| ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() * 1e6).round() as i64)
            .collect();
        radii.sort_unstable();
        radii.dedup();
        println!(
            "{levels}       {:6}  {:6} {:6}   {vol:.6}  {:.4}   {:.4}  {}",
            m.nverts(),
            m.ntets(),
            m.boundary_faces().len(),
            (exact - vol) / exact,
            m.h_max(),
            radii.len()
        );
    }

    println!("\nuniform refinement chain from levels=1:");
    let mut m = gen_shell_mesh(1.0, 0.5, 1).expect("valid shell");
    for round in 0..3 {
        let before = m.ntets();
        let h_before = m.h_max();
        let vol_before = m.total_volume();
        m = uniform_refine(&m).expect("uniform refine");
        println!(
            "round {round}: {before} -> {} tets (splits/marks = {:.3}), h {h_before:.4} -> {:.4}, vol {vol_before:.6} -> {:.6}",
            m.ntets(),
            (m.ntets() - before) as f64 / before as f64,
            m.h_max(),
            m.total_volume()
        );
    }

    println!("\nsingle-mark cascade scan (max splits over marks):");
    for levels in [0usize, 1, 2] {
        let base = gen_shell_mesh(1.0, 0.5, levels).expect("valid shell");
        let (max_splits, argmax) = single_mark_scan(&base);
        println!(
            "levels={levels} ({} tets): max {max_splits} splits at mark {argmax}",
            base.ntets()
        );
    }

    // Grade a mesh hard toward one point: adaptive loops produce exactly this
    // kind of size gradient, with mark sets that always include the
    // large-error coarse elements around the fine region.
    let mut graded = gen_shell_mesh(1.0, 0.5, 1).expect("valid shell");
    let focus = [0.75, 0.0, 0.0];
    for round in 0..6 {
        let mut dists: Vec<(f64, usize)> = (0..graded.ntets())
            .map(|t| {
                let c = graded.tet_coords(t);
                let cx = [
                    (c[0][0] + c[1][0] + c[2][0] + c[3][0]) / 4.0 - focus[0],
                    (c[0][1] + c[1][1] + c[2][1] + c[3][1]) / 4.0 - focus[1],
                    (c[0][2] + c[1][2] + c[2][2] + c[3][2]) / 4.0 - focus[2],
                ];
                (cx[0] * cx[0] + cx[1] * cx[1] + cx[2] * cx[2], t)
            })
            .collect();
        dists.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let marks = MarkSet::from_indices(dists.iter().take(40).map(|&(_, t)| t));
        let before = graded.ntets();
        graded = refine(&graded, &marks).expect("grading refine");
        println!(
            "grading round {round}: {before} -> {} tets (splits/marks = {:.2})",
            graded.ntets(),
            (graded.ntets() - before) as f64 / 40.0
        );
    }
    let h_min = (0..graded.ntets())
        .map(|t| graded.tet_diameter(t))
        .fold(f64::INFINITY, f64::min);
    println!(
        "graded mesh: {} tets, h ratio {:.1}",
        graded.ntets(),
        graded.h_max() / h_min
    );

    for levels in [0usize, 1] {
        println!("\nrandom-mark chains (deterministic lcg), levels={levels} base:");
        let mut worst = 0.0f64;
        let mut lcg = 0x2545F4914F6CDD1Du64;
        let mut rand01 = move || {
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (lcg >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut total_unsnapped = 0usize;
        let mut total_verts = 0usize;
        let mut final_tets = 0;
        for _chain in 0..10 {
            let mut m = gen_shell_mesh(1.0, 0.5, levels).expect("valid shell");
            for _round in 0..10 {
                let p = 0.02 + 0.10 * rand01();
                let marks = MarkSet::from_indices((0..m.ntets()).filter(|_| rand01() < p));
                if marks.is_empty() {
                    continue;
                }
                let before = m.ntets();
                let nmarks = marks.len();
                m = refine(&m, &marks).expect("random refine");
                let ratio = (m.ntets() - before) as f64 / nmarks as f64;
                worst = worst.max(ratio);
            }
            total_unsnapped += m.unsnapped().len();
            total_verts += m.nverts();
            final_tets = m.ntets();
        }
        println!(
            "chains done: final mesh {final_tets} tets, worst splits/marks ratio {worst:.3}, \
             unsnapped {total_unsnapped} of {total_verts} vertices across all chains"
        );
    }

    println!("\nspiral chain cascades (mark = first tet only):");
    for n in [10usize, 30, 80, 300, 600] {
        let chain = spiral_chain(n, 1.08);
        let marks = MarkSet::from_indices([0usize]);
        match refine(&chain, &marks) {
            Ok(r) => println!(
                "n={n}: Ok, {} -> {} tets (+{} splits)",
                chain.ntets(),
                r.ntets(),
                r.ntets() - chain.ntets()
            ),
            Err(e) => println!("n={n}: Err: {e}"),
        }
    }

    // Confirm the spiral chain really has the intended propagation structure:
    // each tet's longest edge is the one it shares with the next tet.
    let chain = spiral_chain(12, 1.08);
    let mut structure_ok = true;
    for (i, tet) in chain.tets().iter().enumerate() {
        let vs = chain.vertices();
        let mut best = (0.0f64, (0usize, 0usize));
        for a in 0..4 {
            for b in a + 1..4 {
                let (p, q) = (vs[tet[a]], vs[tet[b]]);
                let d2 = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2);
                if d2 > best.0 {
                    best = (d2, (tet[a].min(tet[b]), tet[a].max(tet[b])));
                }
            }
        }
        if best.1 != (i + 1, i + 2) {
            structure_ok = false;
            println!("tet {i}: longest edge {:?}, expected ({},{})", best.1, i + 1, i + 2);
        }
    }
    println!("spiral longest-edge structure as intended: {structure_ok}");
}
