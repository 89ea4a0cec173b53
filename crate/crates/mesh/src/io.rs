//! Mesh file io.
//!
//! Import and export use ASCII MSH version 4.1 framing: `$MeshFormat`,
//! optional `$PhysicalNames`, `$Nodes`, and `$Elements` sections, with other
//! sections skipped. Surface element blocks (dimension 2) must hold 3-node
//! triangles (element type 2) and are mapped to boundary tags by their entity
//! tag: 1 is the obstacle surface, 2 the outer sphere. Volume blocks
//! (dimension 3) must hold 4-node tetrahedra (element type 4). Point and line
//! blocks are ignored. Export additionally writes the two surface groups under
//! `$PhysicalNames` so round trips are self-describing.
//!
//! Visualization export writes legacy ASCII VTK unstructured grids (cell type
//! 10), optionally with per-vertex scalar fields attached.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use crate::types::{signed_volume, BoundaryFace, TetMesh};
use crate::{BoundaryTag, MeshError};

fn import_err(detail: String) -> MeshError {
    MeshError::Import { detail }
}

/// What an import did beyond producing the mesh: elements whose vertex order
/// had to be corrected and human-readable warnings about them.
#[derive(Debug, Default)]
pub struct ImportReport {
    /// File tags of elements that arrived with negative orientation and were
    /// reordered to positive volume.
    pub reoriented: Vec<u64>,
    pub warnings: Vec<String>,
}

/// Whitespace token cursor over one file section.
struct Cursor<'a> {
    tokens: Vec<&'a str>,
    pos: usize,
    section: &'static str,
}

impl<'a> Cursor<'a> {
    fn new(tokens: Vec<&'a str>, section: &'static str) -> Self {
        Cursor {
            tokens,
            pos: 0,
            section,
        }
    }

    fn next(&mut self) -> Result<&'a str, MeshError> {
        let tok = self.tokens.get(self.pos).copied().ok_or_else(|| {
            import_err(format!("unexpected end of the {} section", self.section))
        })?;
        self.pos += 1;
        Ok(tok)
    }

    fn next_usize(&mut self) -> Result<usize, MeshError> {
        let tok = self.next()?;
        tok.parse().map_err(|_| {
            import_err(format!(
                "invalid integer '{tok}' in the {} section",
                self.section
            ))
        })
    }

    fn next_u64(&mut self) -> Result<u64, MeshError> {
        let tok = self.next()?;
        tok.parse().map_err(|_| {
            import_err(format!(
                "invalid integer '{tok}' in the {} section",
                self.section
            ))
        })
    }

    fn next_f64(&mut self) -> Result<f64, MeshError> {
        let tok = self.next()?;
        tok.parse().map_err(|_| {
            import_err(format!(
                "invalid number '{tok}' in the {} section",
                self.section
            ))
        })
    }
}

/// Nodes-per-element for the MSH element types this importer can at least
/// skip over; `None` means the type is unknown and the file unreadable.
fn nodes_per_type(ty: u32) -> Option<usize> {
    Some(match ty {
        1 => 2,   // 2-node line
        2 => 3,   // 3-node triangle
        3 => 4,   // 4-node quadrangle
        4 => 4,   // 4-node tetrahedron
        5 => 8,   // 8-node hexahedron
        6 => 6,   // 6-node prism
        7 => 5,   // 5-node pyramid
        8 => 3,   // 3-node quadratic line
        9 => 6,   // 6-node quadratic triangle
        11 => 10, // 10-node quadratic tetrahedron
        15 => 1,  // point
        _ => return None,
    })
}

fn split_sections(text: &str) -> Result<Vec<(&str, Vec<&str>)>, MeshError> {
    let mut sections = Vec::new();
    let mut current: Option<(&str, Vec<&str>)> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('$') {
            if let Some(rest) = name.strip_prefix("End") {
                match current.take() {
                    Some((open, tokens)) if open == rest => sections.push((open, tokens)),
                    Some((open, _)) => {
                        return Err(import_err(format!(
                            "section ${open} closed by $End{rest}"
                        )))
                    }
                    None => {
                        return Err(import_err(format!("$End{rest} without an open section")))
                    }
                }
            } else {
                if current.is_some() {
                    return Err(import_err(format!(
                        "section ${name} opened inside another section"
                    )));
                }
                current = Some((name, Vec::new()));
            }
        } else if let Some((_, tokens)) = current.as_mut() {
            tokens.extend(line.split_whitespace());
        } else {
            return Err(import_err(format!("content outside any section: '{line}'")));
        }
    }
    if let Some((open, _)) = current {
        return Err(import_err(format!("section ${open} is never closed")));
    }
    Ok(sections)
}

/// Imports a mesh, printing any import warnings to stderr. See
/// [`import_msh_report`] for programmatic access to the warnings.
pub fn import_msh<P: AsRef<Path>>(path: P) -> Result<TetMesh, MeshError> {
    let (mesh, report) = import_msh_report(path)?;
    for w in &report.warnings {
        eprintln!("mesh import warning: {w}");
    }
    Ok(mesh)
}

/// Imports a mesh and reports what had to be fixed up along the way.
///
/// Elements with negative orientation are reordered to positive volume and
/// listed in the report. Missing surface groups, non-tetrahedral volume
/// cells, unknown node references, and structurally broken meshes are errors
/// naming the offending entity.
pub fn import_msh_report<P: AsRef<Path>>(path: P) -> Result<(TetMesh, ImportReport), MeshError> {
    let text = std::fs::read_to_string(path)?;
    let sections = split_sections(&text)?;

    let format = sections
        .iter()
        .find(|(name, _)| *name == "MeshFormat")
        .ok_or_else(|| import_err("missing $MeshFormat section".into()))?;
    {
        let mut cur = Cursor::new(format.1.clone(), "MeshFormat");
        let version = cur.next()?;
        if version != "4.1" {
            return Err(import_err(format!(
                "unsupported MSH version '{version}'; expected 4.1"
            )));
        }
        let file_type = cur.next_usize()?;
        if file_type != 0 {
            return Err(import_err("binary MSH files are not supported".into()));
        }
    }

    // Nodes.
    let nodes_section = sections
        .iter()
        .find(|(name, _)| *name == "Nodes")
        .ok_or_else(|| import_err("missing $Nodes section".into()))?;
    let mut vertices: Vec<[f64; 3]> = Vec::new();
    let mut tag_to_index: HashMap<u64, usize> = HashMap::new();
    {
        let mut cur = Cursor::new(nodes_section.1.clone(), "Nodes");
        let num_blocks = cur.next_usize()?;
        let _num_nodes = cur.next_usize()?;
        let _min_tag = cur.next_u64()?;
        let _max_tag = cur.next_u64()?;
        for _ in 0..num_blocks {
            let _dim = cur.next_usize()?;
            let _entity = cur.next_u64()?;
            let parametric = cur.next_usize()?;
            if parametric != 0 {
                return Err(import_err("parametric nodes are not supported".into()));
            }
            let n = cur.next_usize()?;
            let mut tags = Vec::with_capacity(n);
            for _ in 0..n {
                tags.push(cur.next_u64()?);
            }
            for tag in tags {
                let x = cur.next_f64()?;
                let y = cur.next_f64()?;
                let z = cur.next_f64()?;
                if tag_to_index.insert(tag, vertices.len()).is_some() {
                    return Err(import_err(format!("node tag {tag} appears twice")));
                }
                vertices.push([x, y, z]);
            }
        }
    }

    // Elements.
    let elems_section = sections
        .iter()
        .find(|(name, _)| *name == "Elements")
        .ok_or_else(|| import_err("missing $Elements section".into()))?;
    let mut tets: Vec<[usize; 4]> = Vec::new();
    let mut tet_tags: Vec<u64> = Vec::new();
    let mut boundary_faces: Vec<BoundaryFace> = Vec::new();
    {
        let mut cur = Cursor::new(elems_section.1.clone(), "Elements");
        let num_blocks = cur.next_usize()?;
        let _num_elems = cur.next_usize()?;
        let _min_tag = cur.next_u64()?;
        let _max_tag = cur.next_u64()?;
        for _ in 0..num_blocks {
            let dim = cur.next_usize()?;
            let entity = cur.next_u64()?;
            let ty: u32 = cur.next_usize()? as u32;
            let n = cur.next_usize()?;
            let per = nodes_per_type(ty).ok_or_else(|| {
                import_err(format!("unknown element type {ty} in entity {entity}"))
            })?;
            match dim {
                0 | 1 => {
                    // Points and lines carry no mesh content here; skip.
                    for _ in 0..n * (1 + per) {
                        cur.next()?;
                    }
                }
                2 => {
                    if ty != 2 {
                        return Err(import_err(format!(
                            "surface block (entity tag {entity}) has element type {ty}; only \
                             3-node triangles are supported"
                        )));
                    }
                    let tag = match entity {
                        1 => BoundaryTag::Obstacle,
                        2 => BoundaryTag::Outer,
                        other => {
                            return Err(import_err(format!(
                                "surface block with group tag {other}; expected 1 (obstacle) or \
                                 2 (outer sphere)"
                            )))
                        }
                    };
                    for _ in 0..n {
                        let etag = cur.next_u64()?;
                        let mut verts = [0usize; 3];
                        for v in &mut verts {
                            let node = cur.next_u64()?;
                            *v = *tag_to_index.get(&node).ok_or_else(|| {
                                import_err(format!(
                                    "element {etag} references unknown node {node}"
                                ))
                            })?;
                        }
                        boundary_faces.push(BoundaryFace {
                            vertices: verts,
                            tag,
                        });
                    }
                }
                3 => {
                    if ty != 4 {
                        return Err(import_err(format!(
                            "volume block (entity tag {entity}) has non-tetrahedral cells \
                             (element type {ty})"
                        )));
                    }
                    for _ in 0..n {
                        let etag = cur.next_u64()?;
                        let mut verts = [0usize; 4];
                        for v in &mut verts {
                            let node = cur.next_u64()?;
                            *v = *tag_to_index.get(&node).ok_or_else(|| {
                                import_err(format!(
                                    "element {etag} references unknown node {node}"
                                ))
                            })?;
                        }
                        tets.push(verts);
                        tet_tags.push(etag);
                    }
                }
                d => {
                    return Err(import_err(format!(
                        "unsupported entity dimension {d} in $Elements"
                    )))
                }
            }
        }
    }

    if tets.is_empty() {
        return Err(import_err("no tetrahedral volume cells".into()));
    }
    if !boundary_faces
        .iter()
        .any(|f| f.tag == BoundaryTag::Outer)
    {
        return Err(import_err("no OUTER surface group".into()));
    }
    if !boundary_faces
        .iter()
        .any(|f| f.tag == BoundaryTag::Obstacle)
    {
        return Err(import_err("no OBSTACLE surface group".into()));
    }

    // Fix element orientation, reporting what was touched.
    let mut report = ImportReport::default();
    for (tet, &etag) in tets.iter_mut().zip(&tet_tags) {
        if tet.iter().any(|&v| v >= vertices.len()) {
            continue; // unreachable: tags resolved above
        }
        let coords = [
            vertices[tet[0]],
            vertices[tet[1]],
            vertices[tet[2]],
            vertices[tet[3]],
        ];
        let vol = signed_volume(&coords);
        if vol == 0.0 {
            return Err(import_err(format!(
                "element {etag} is degenerate (zero volume)"
            )));
        }
        if vol < 0.0 {
            tet.swap(2, 3);
            report.reoriented.push(etag);
            report.warnings.push(format!(
                "element {etag} had negative orientation; vertex order corrected"
            ));
        }
    }

    let mesh = TetMesh::from_parts(vertices, tets, boundary_faces, None)
        .map_err(|e| import_err(format!("imported mesh is not valid: {e}")))?;
    Ok((mesh, report))
}

/// Writes a mesh in the ASCII MSH 4.1 dialect [`import_msh`] reads back.
pub fn write_msh<W: Write>(mesh: &TetMesh, w: &mut W) -> Result<(), MeshError> {
    writeln!(w, "$MeshFormat")?;
    writeln!(w, "4.1 0 8")?;
    writeln!(w, "$EndMeshFormat")?;

    writeln!(w, "$PhysicalNames")?;
    writeln!(w, "2")?;
    writeln!(w, "2 1 \"OBSTACLE\"")?;
    writeln!(w, "2 2 \"OUTER\"")?;
    writeln!(w, "$EndPhysicalNames")?;

    let nv = mesh.nverts();
    writeln!(w, "$Nodes")?;
    writeln!(w, "1 {nv} 1 {nv}")?;
    writeln!(w, "3 1 0 {nv}")?;
    for i in 1..=nv {
        writeln!(w, "{i}")?;
    }
    for v in mesh.vertices() {
        writeln!(w, "{} {} {}", v[0], v[1], v[2])?;
    }
    writeln!(w, "$EndNodes")?;

    let obstacle: Vec<&BoundaryFace> = mesh
        .boundary_faces()
        .iter()
        .filter(|f| f.tag == BoundaryTag::Obstacle)
        .collect();
    let outer: Vec<&BoundaryFace> = mesh
        .boundary_faces()
        .iter()
        .filter(|f| f.tag == BoundaryTag::Outer)
        .collect();
    let total = obstacle.len() + outer.len() + mesh.ntets();

    writeln!(w, "$Elements")?;
    writeln!(w, "3 {total} 1 {total}")?;
    let mut tag = 1u64;
    writeln!(w, "2 1 2 {}", obstacle.len())?;
    for f in &obstacle {
        let v = f.vertices;
        writeln!(w, "{tag} {} {} {}", v[0] + 1, v[1] + 1, v[2] + 1)?;
        tag += 1;
    }
    writeln!(w, "2 2 2 {}", outer.len())?;
    for f in &outer {
        let v = f.vertices;
        writeln!(w, "{tag} {} {} {}", v[0] + 1, v[1] + 1, v[2] + 1)?;
        tag += 1;
    }
    writeln!(w, "3 1 4 {}", mesh.ntets())?;
    for t in mesh.tets() {
        writeln!(
            w,
            "{tag} {} {} {} {}",
            t[0] + 1,
            t[1] + 1,
            t[2] + 1,
            t[3] + 1
        )?;
        tag += 1;
    }
    writeln!(w, "$EndElements")?;
    Ok(())
}

/// Writes the mesh as an MSH 4.1 file at `path`.
pub fn export_msh<P: AsRef<Path>>(mesh: &TetMesh, path: P) -> Result<(), MeshError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_msh(mesh, &mut file)?;
    file.flush()?;
    Ok(())
}

/// Writes the mesh as a legacy ASCII VTK unstructured grid.
pub fn write_vtk<W: Write>(mesh: &TetMesh, w: &mut W) -> Result<(), MeshError> {
    write_vtk_with_point_data(mesh, &[], w)
}

/// Writes the mesh as a legacy ASCII VTK unstructured grid with per-vertex
/// scalar fields. Every field must hold one value per vertex.
pub fn write_vtk_with_point_data<W: Write>(
    mesh: &TetMesh,
    fields: &[(&str, &[f64])],
    w: &mut W,
) -> Result<(), MeshError> {
    for (name, values) in fields {
        if values.len() != mesh.nverts() {
            return Err(MeshError::Validation {
                detail: format!(
                    "point data '{name}' has {} values for {} vertices",
                    values.len(),
                    mesh.nverts()
                ),
            });
        }
    }

    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(w, "tetrahedral mesh")?;
    writeln!(w, "ASCII")?;
    writeln!(w, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(w, "POINTS {} double", mesh.nverts())?;
    for v in mesh.vertices() {
        writeln!(w, "{} {} {}", v[0], v[1], v[2])?;
    }
    writeln!(w, "CELLS {} {}", mesh.ntets(), 5 * mesh.ntets())?;
    for t in mesh.tets() {
        writeln!(w, "4 {} {} {} {}", t[0], t[1], t[2], t[3])?;
    }
    writeln!(w, "CELL_TYPES {}", mesh.ntets())?;
    for _ in 0..mesh.ntets() {
        writeln!(w, "10")?;
    }
    if !fields.is_empty() {
        writeln!(w, "POINT_DATA {}", mesh.nverts())?;
        for (name, values) in fields {
            writeln!(w, "SCALARS {name} double 1")?;
            writeln!(w, "LOOKUP_TABLE default")?;
            for x in *values {
                writeln!(w, "{x}")?;
            }
        }
    }
    Ok(())
}

/// Writes the mesh as a legacy VTK file at `path`.
pub fn export_vtk<P: AsRef<Path>>(mesh: &TetMesh, path: P) -> Result<(), MeshError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_vtk(mesh, &mut file)?;
    file.flush()?;
    Ok(())
}
