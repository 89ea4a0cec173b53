use std::collections::HashMap;

use crate::types::{signed_volume, BoundaryFace, ShellProjection, TetMesh};
use crate::{BoundaryTag, MeshError};

fn construction_err(detail: String) -> MeshError {
    MeshError::Construction { detail }
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Unit-sphere triangulation: an icosahedron subdivided `levels` times, every
/// vertex projected onto the sphere. Subdivision splits each triangle into
/// four through edge midpoints, shared across neighbors via a midpoint cache.
fn icosphere(levels: usize) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let raw: [[f64; 3]; 12] = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let mut verts: Vec<[f64; 3]> = raw.iter().map(|&v| normalize(v)).collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..levels {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<[f64; 3]>| -> usize {
            let key = (a.min(b), a.max(b));
            if let Some(&m) = cache.get(&key) {
                return m;
            }
            let va = verts[a];
            let vb = verts[b];
            let m = normalize([
                (va[0] + vb[0]) / 2.0,
                (va[1] + vb[1]) / 2.0,
                (va[2] + vb[2]) / 2.0,
            ]);
            verts.push(m);
            let idx = verts.len() - 1;
            cache.insert(key, idx);
            idx
        };
        let mut next = Vec::with_capacity(4 * faces.len());
        for f in &faces {
            let m01 = midpoint(f[0], f[1], &mut verts);
            let m12 = midpoint(f[1], f[2], &mut verts);
            let m02 = midpoint(f[0], f[2], &mut verts);
            next.push([f[0], m01, m02]);
            next.push([f[1], m12, m01]);
            next.push([f[2], m02, m12]);
            next.push([m01, m12, m02]);
        }
        faces = next;
    }

    (verts, faces)
}

/// Splits the prism with bottom triangle `p` and top triangle `q` (vertex i of
/// `q` radially above vertex i of `p`) into three tetrahedra.
///
/// Each quadrilateral wall is cut by the diagonal through its smallest global
/// vertex index, so the two prisms sharing a wall always agree on its
/// triangulation. With bottom indices all smaller than top indices, rotating
/// the smallest bottom vertex to the front leaves one free wall whose diagonal
/// follows the smaller of the two remaining bottom vertices.
fn split_prism(p: [usize; 3], q: [usize; 3]) -> [[usize; 4]; 3] {
    let s = (0..3).min_by_key(|&i| p[i]).expect("three candidates");
    let p = [p[s], p[(s + 1) % 3], p[(s + 2) % 3]];
    let q = [q[s], q[(s + 1) % 3], q[(s + 2) % 3]];
    if p[1] < p[2] {
        [
            [p[0], p[1], p[2], q[2]],
            [p[0], p[1], q[2], q[1]],
            [p[0], q[1], q[2], q[0]],
        ]
    } else {
        [
            [p[0], p[1], p[2], q[1]],
            [p[0], p[2], q[2], q[1]],
            [p[0], q[1], q[2], q[0]],
        ]
    }
}

/// Generates a tetrahedral mesh of the shell `obstacle_radius <= |x| <=
/// outer_radius`.
///
/// The sphere triangulation is an icosahedron subdivided `levels` times;
/// `levels + 2` concentric copies of it, at uniformly spaced radii, are
/// stacked into prism layers and split into tetrahedra. The innermost
/// triangles are tagged as obstacle boundary, the outermost as outer boundary,
/// and the mesh remembers both radii so refinement can keep new boundary
/// vertices on the spheres.
pub fn gen_shell_mesh(
    outer_radius: f64,
    obstacle_radius: f64,
    levels: usize,
) -> Result<TetMesh, MeshError> {
    if !outer_radius.is_finite() || !obstacle_radius.is_finite() {
        return Err(construction_err(format!(
            "shell radii must be finite, got inner {obstacle_radius}, outer {outer_radius}"
        )));
    }
    if !(obstacle_radius > 0.0 && obstacle_radius < outer_radius) {
        return Err(construction_err(format!(
            "shell radii must satisfy 0 < inner < outer, got inner {obstacle_radius}, outer \
             {outer_radius}"
        )));
    }
    if levels > 6 {
        return Err(construction_err(format!(
            "subdivision level {levels} would allocate tens of millions of cells; use adaptive \
             refinement instead of levels above 6"
        )));
    }

    let (unit, tris) = icosphere(levels);
    let nv = unit.len();
    let layers = levels + 2;

    let mut vertices = Vec::with_capacity(nv * layers);
    for k in 0..layers {
        let t = k as f64 / (layers - 1) as f64;
        let r = obstacle_radius + (outer_radius - obstacle_radius) * t;
        vertices.extend(unit.iter().map(|u| [u[0] * r, u[1] * r, u[2] * r]));
    }

    let mut tets = Vec::with_capacity(3 * tris.len() * (layers - 1));
    for k in 0..layers - 1 {
        let base = k * nv;
        let top = (k + 1) * nv;
        for tri in &tris {
            let p = [base + tri[0], base + tri[1], base + tri[2]];
            let q = [top + tri[0], top + tri[1], top + tri[2]];
            for mut tet in split_prism(p, q) {
                let coords = [
                    vertices[tet[0]],
                    vertices[tet[1]],
                    vertices[tet[2]],
                    vertices[tet[3]],
                ];
                if signed_volume(&coords) < 0.0 {
                    tet.swap(2, 3);
                }
                tets.push(tet);
            }
        }
    }

    let top_base = (layers - 1) * nv;
    let mut boundary_faces = Vec::with_capacity(2 * tris.len());
    for tri in &tris {
        boundary_faces.push(BoundaryFace {
            vertices: [tri[0], tri[1], tri[2]],
            tag: BoundaryTag::Obstacle,
        });
    }
    for tri in &tris {
        boundary_faces.push(BoundaryFace {
            vertices: [top_base + tri[0], top_base + tri[1], top_base + tri[2]],
            tag: BoundaryTag::Outer,
        });
    }

    TetMesh::from_parts(
        vertices,
        tets,
        boundary_faces,
        Some(ShellProjection {
            obstacle_radius,
            outer_radius,
        }),
    )
}
