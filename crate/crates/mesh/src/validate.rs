use std::collections::HashMap;

use crate::types::{norm, sorted3, TetMesh, TET_FACES};
use crate::{BoundaryTag, MeshError};

fn fail(detail: String) -> Result<(), MeshError> {
    Err(MeshError::Validation { detail })
}

/// Checks the structural invariants of a mesh:
/// - vertex indices in range, no repeated vertices within an element or face,
/// - every element has strictly positive signed volume,
/// - every face is contained in one element (boundary) or two (interior),
/// - the boundary face list covers exactly the one-sided faces, without
///   duplicates, and both boundary tags occur,
/// - for generated shell meshes, tagged vertices lie on their spheres to a
///   relative tolerance of 1e-9, except the vertices the mesh records as
///   unsnapped because snapping them would have inverted an element.
///
/// Every constructor in this crate runs this check, so `TetMesh` values in
/// user hands always satisfy it; it stays public for tests and for callers
/// assembling meshes from raw parts.
pub fn validate(mesh: &TetMesh) -> Result<(), MeshError> {
    let nv = mesh.nverts();

    for (i, v) in mesh.vertices().iter().enumerate() {
        if !v.iter().all(|c| c.is_finite()) {
            return fail(format!("vertex {i} has non-finite coordinates {v:?}"));
        }
    }

    for (ti, tet) in mesh.tets().iter().enumerate() {
        if let Some(&bad) = tet.iter().find(|&&v| v >= nv) {
            return fail(format!("tet {ti} references missing vertex {bad}"));
        }
        for a in 0..4 {
            for b in a + 1..4 {
                if tet[a] == tet[b] {
                    return fail(format!("tet {ti} repeats vertex {}", tet[a]));
                }
            }
        }
        let vol = mesh.tet_volume(ti);
        if !(vol > 0.0) {
            return fail(format!("tet {ti} has non-positive volume {vol:e}"));
        }
    }

    // Count how many elements contain each face.
    let mut incidence: HashMap<[usize; 3], u32> = HashMap::with_capacity(4 * mesh.ntets());
    for tet in mesh.tets() {
        for local in TET_FACES {
            let key = sorted3([tet[local[0]], tet[local[1]], tet[local[2]]]);
            let count = incidence.entry(key).or_insert(0);
            *count += 1;
            if *count > 2 {
                return fail(format!("face {key:?} is shared by more than two tets"));
            }
        }
    }

    let mut tagged: HashMap<[usize; 3], BoundaryTag> = HashMap::new();
    let mut saw_obstacle = false;
    let mut saw_outer = false;
    for (fi, bf) in mesh.boundary_faces().iter().enumerate() {
        if let Some(&bad) = bf.vertices.iter().find(|&&v| v >= nv) {
            return fail(format!("boundary face {fi} references missing vertex {bad}"));
        }
        let key = sorted3(bf.vertices);
        if key[0] == key[1] || key[1] == key[2] {
            return fail(format!("boundary face {fi} repeats a vertex: {key:?}"));
        }
        if tagged.insert(key, bf.tag).is_some() {
            return fail(format!("boundary face {key:?} is listed twice"));
        }
        match incidence.get(&key) {
            None => return fail(format!("boundary face {key:?} is not a face of any tet")),
            Some(1) => {}
            Some(_) => return fail(format!("interior face {key:?} is tagged as boundary")),
        }
        match bf.tag {
            BoundaryTag::Obstacle => saw_obstacle = true,
            BoundaryTag::Outer => saw_outer = true,
        }
    }

    for (key, count) in &incidence {
        if *count == 1 && !tagged.contains_key(key) {
            return fail(format!("boundary face {key:?} carries no tag"));
        }
    }

    if !saw_obstacle {
        return fail("no OBSTACLE boundary faces".into());
    }
    if !saw_outer {
        return fail("no OUTER boundary faces".into());
    }

    if let Some(&bad) = mesh.unsnapped().iter().find(|&&v| v >= nv) {
        return fail(format!("unsnapped list references missing vertex {bad}"));
    }

    // Generated shells know their sphere radii; check tagged vertices sit on
    // them, apart from recorded unsnapped vertices. Imported meshes have
    // unknown boundary geometry and skip this.
    if let Some(proj) = mesh.projection() {
        for bf in mesh.boundary_faces() {
            let target = match bf.tag {
                BoundaryTag::Obstacle => proj.obstacle_radius,
                BoundaryTag::Outer => proj.outer_radius,
            };
            for &v in &bf.vertices {
                if mesh.unsnapped().binary_search(&v).is_ok() {
                    continue;
                }
                let r = norm(mesh.vertex(v));
                if (r - target).abs() > 1e-9 * target {
                    return fail(format!(
                        "vertex {v} of a {:?} face has radius {r:.15}, expected {target:.15}",
                        bf.tag
                    ));
                }
            }
        }
    }

    Ok(())
}
