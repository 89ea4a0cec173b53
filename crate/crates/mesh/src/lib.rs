//! Conforming tetrahedral meshes of the shell between a scatterer and the
//! artificial outer sphere where the transparent boundary condition acts.
//!
//! The crate provides
//! - a built-in generator for spherical-shell domains (icosahedron-based
//!   sphere triangulations stacked into radial layers of prisms, each prism
//!   split into three tetrahedra),
//! - import of externally generated meshes in ASCII MSH 4.1 form with tagged
//!   obstacle and outer surface groups,
//! - conforming mesh refinement by longest-edge bisection with recursive
//!   closure, projecting new boundary vertices of generated meshes back onto
//!   their spheres,
//! - a structural validator (face incidence counts, element orientation,
//!   boundary tagging) that every construction path runs before returning,
//! - legacy VTK export for visualization and MSH export for round-tripping.
//!
//! Meshes are immutable after construction; refinement returns a new mesh, so
//! concurrent reads are safe without locking.

mod generator;
mod io;
mod refine;
mod types;
mod validate;

pub use generator::gen_shell_mesh;
pub use io::{
    export_msh, export_vtk, import_msh, import_msh_report, write_msh, write_vtk,
    write_vtk_with_point_data, ImportReport,
};
pub use refine::{refine, uniform_refine};
pub use types::{
    signed_volume, BoundaryFace, BoundaryTag, FaceInfo, MarkSet, ShellProjection, TetMesh,
};
pub use validate::validate;

use thiserror::Error;

/// Errors produced by mesh construction, validation, refinement, and file io.
#[derive(Debug, Error)]
pub enum MeshError {
    /// A generator was called with parameters that cannot yield a valid mesh.
    #[error("mesh construction failed: {detail}")]
    Construction { detail: String },

    /// A structural invariant does not hold (bad incidence, orientation, tags).
    #[error("mesh validation failed: {detail}")]
    Validation { detail: String },

    /// A mesh file could not be parsed or describes an unusable mesh.
    #[error("mesh import failed: {detail}")]
    Import { detail: String },

    /// Conformity closure kept cascading far beyond the marked set, which
    /// points at a pathological input mesh rather than a normal refinement.
    #[error(
        "refinement closure cascaded to {splits} element splits, above the budget of {limit} \
         (20 per marked element plus headroom growing with mesh size); the input mesh is \
         likely pathological"
    )]
    RefinementCascade { splits: usize, limit: usize },

    /// A mark set refers to elements the mesh does not have.
    #[error("invalid refinement marks: {detail}")]
    InvalidMarks { detail: String },

    /// Underlying file system failure during import or export.
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}
