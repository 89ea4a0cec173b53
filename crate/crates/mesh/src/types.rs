use std::collections::{BTreeMap, BTreeSet};

use crate::MeshError;

/// Which part of the domain boundary a surface triangle belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryTag {
    /// Surface of the scatterer, the inner boundary of the computational shell.
    Obstacle,
    /// Artificial outer sphere carrying the transparent boundary condition.
    Outer,
}

/// A tagged boundary triangle, referencing mesh vertices by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryFace {
    pub vertices: [usize; 3],
    pub tag: BoundaryTag,
}

/// Radii of the two spheres bounding a generated shell mesh.
///
/// Refinement uses them to project new boundary vertices back onto the exact
/// spheres. Imported meshes have unknown boundary geometry and carry none.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShellProjection {
    pub obstacle_radius: f64,
    pub outer_radius: f64,
}

/// One geometric face of the mesh together with its element incidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceInfo {
    /// Vertex indices sorted ascending; identifies the face uniquely.
    pub vertices: [usize; 3],
    /// First element containing the face.
    pub left: usize,
    /// Second element for interior faces, absent on the boundary.
    pub right: Option<usize>,
    /// Boundary tag when the face lies on the domain boundary.
    pub tag: Option<BoundaryTag>,
}

/// Local vertex pairs forming the six edges of a tetrahedron.
pub(crate) const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Local vertex triples forming the four faces of a tetrahedron.
pub(crate) const TET_FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

pub(crate) fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = sub(a, b);
    dot(d, d)
}

pub(crate) fn sorted3(mut f: [usize; 3]) -> [usize; 3] {
    f.sort_unstable();
    f
}

/// Signed volume of the tetrahedron spanned by four points, positive when the
/// fourth point lies on the side the right-hand rule assigns to the first
/// three.
pub fn signed_volume(p: &[[f64; 3]; 4]) -> f64 {
    let u = sub(p[1], p[0]);
    let v = sub(p[2], p[0]);
    let w = sub(p[3], p[0]);
    dot(u, cross(v, w)) / 6.0
}

/// A conforming tetrahedral mesh with tagged boundary faces.
///
/// Instances are immutable; every constructor runs the structural validator,
/// so a value of this type always satisfies the mesh invariants (positive
/// element volumes, two-sided interior faces, fully tagged boundary).
#[derive(Clone, Debug)]
pub struct TetMesh {
    vertices: Vec<[f64; 3]>,
    tets: Vec<[usize; 4]>,
    boundary_faces: Vec<BoundaryFace>,
    projection: Option<ShellProjection>,
    /// Boundary vertices left at the plain edge midpoint because snapping
    /// them onto their sphere would have inverted a neighboring element.
    unsnapped: Vec<usize>,
}

impl TetMesh {
    /// Assembles a mesh from raw arrays and validates it.
    pub fn from_parts(
        vertices: Vec<[f64; 3]>,
        tets: Vec<[usize; 4]>,
        boundary_faces: Vec<BoundaryFace>,
        projection: Option<ShellProjection>,
    ) -> Result<Self, MeshError> {
        Self::from_parts_unsnapped(vertices, tets, boundary_faces, projection, Vec::new())
    }

    /// Assembles a mesh whose construction left some boundary vertices off
    /// their sphere; refinement uses this to carry the record forward.
    pub(crate) fn from_parts_unsnapped(
        vertices: Vec<[f64; 3]>,
        tets: Vec<[usize; 4]>,
        boundary_faces: Vec<BoundaryFace>,
        projection: Option<ShellProjection>,
        mut unsnapped: Vec<usize>,
    ) -> Result<Self, MeshError> {
        unsnapped.sort_unstable();
        unsnapped.dedup();
        let mesh = TetMesh {
            vertices,
            tets,
            boundary_faces,
            projection,
            unsnapped,
        };
        crate::validate::validate(&mesh)?;
        Ok(mesh)
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }

    pub fn boundary_faces(&self) -> &[BoundaryFace] {
        &self.boundary_faces
    }

    /// Sphere radii for boundary projection; present only on generated meshes.
    pub fn projection(&self) -> Option<ShellProjection> {
        self.projection
    }

    /// Boundary vertices that refinement could not snap onto their sphere
    /// without inverting a neighboring element. They sit at the plain edge
    /// midpoint instead; the surrounding surface still converges to the
    /// sphere as its other vertices keep snapping. Sorted ascending, usually
    /// empty.
    pub fn unsnapped(&self) -> &[usize] {
        &self.unsnapped
    }

    pub fn nverts(&self) -> usize {
        self.vertices.len()
    }

    pub fn ntets(&self) -> usize {
        self.tets.len()
    }

    pub fn vertex(&self, i: usize) -> [f64; 3] {
        self.vertices[i]
    }

    pub fn tet(&self, i: usize) -> [usize; 4] {
        self.tets[i]
    }

    pub fn tet_coords(&self, i: usize) -> [[f64; 3]; 4] {
        let t = self.tets[i];
        [
            self.vertices[t[0]],
            self.vertices[t[1]],
            self.vertices[t[2]],
            self.vertices[t[3]],
        ]
    }

    /// Element volume; positive by the orientation invariant.
    pub fn tet_volume(&self, i: usize) -> f64 {
        signed_volume(&self.tet_coords(i))
    }

    pub fn total_volume(&self) -> f64 {
        (0..self.ntets()).map(|i| self.tet_volume(i)).sum()
    }

    /// Element diameter, the length of the longest edge.
    pub fn tet_diameter(&self, i: usize) -> f64 {
        let t = self.tets[i];
        TET_EDGES
            .iter()
            .map(|&(a, b)| dist2(self.vertices[t[a]], self.vertices[t[b]]))
            .fold(0.0f64, f64::max)
            .sqrt()
    }

    /// Largest element diameter in the mesh.
    pub fn h_max(&self) -> f64 {
        (0..self.ntets())
            .map(|i| self.tet_diameter(i))
            .fold(0.0, f64::max)
    }

    /// Face diameter, the length of the longest of its three edges.
    pub fn face_diameter(&self, f: [usize; 3]) -> f64 {
        let pairs = [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])];
        pairs
            .iter()
            .map(|&(a, b)| dist2(self.vertices[a], self.vertices[b]))
            .fold(0.0f64, f64::max)
            .sqrt()
    }

    /// Area of a triangle given by vertex indices.
    pub fn face_area(&self, f: [usize; 3]) -> f64 {
        let a = self.vertices[f[0]];
        let b = self.vertices[f[1]];
        let c = self.vertices[f[2]];
        norm(cross(sub(b, a), sub(c, a))) / 2.0
    }

    /// Enumerates every geometric face with its element incidence and tag,
    /// sorted by vertex triple. Interior faces list both elements.
    pub fn face_table(&self) -> Vec<FaceInfo> {
        let mut map: BTreeMap<[usize; 3], (usize, Option<usize>)> = BTreeMap::new();
        for (ti, tet) in self.tets.iter().enumerate() {
            for local in TET_FACES {
                let key = sorted3([tet[local[0]], tet[local[1]], tet[local[2]]]);
                match map.get_mut(&key) {
                    None => {
                        map.insert(key, (ti, None));
                    }
                    Some(entry) => entry.1 = Some(ti),
                }
            }
        }
        let mut tags: BTreeMap<[usize; 3], BoundaryTag> = BTreeMap::new();
        for bf in &self.boundary_faces {
            tags.insert(sorted3(bf.vertices), bf.tag);
        }
        map.into_iter()
            .map(|(vertices, (left, right))| FaceInfo {
                vertices,
                left,
                right,
                tag: tags.get(&vertices).copied(),
            })
            .collect()
    }
}

/// A set of element indices selected for refinement.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkSet {
    set: BTreeSet<usize>,
}

impl MarkSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a mark set from any index iterator; duplicates collapse.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        MarkSet {
            set: indices.into_iter().collect(),
        }
    }

    /// Marks every element of a mesh with `count` elements.
    pub fn all(count: usize) -> Self {
        Self::from_indices(0..count)
    }

    /// Inserts an index, reporting whether it was new.
    pub fn insert(&mut self, index: usize) -> bool {
        self.set.insert(index)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.set.contains(&index)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.set.iter().next_back().copied()
    }
}
