//! Plane cutting of skinned triangle meshes.

mod cut;
mod topology;
mod trimesh;

pub use cut::{
    classify_vertex, cut_mesh, cut_mesh_with_epsilon, edge_plane_intersection, interpolate_weights,
    CutResult, EdgeHit, NewVertex, Side,
};
pub use topology::{boundary_edges, edge_incidence, ComponentTopology, TopologyReport};
pub use trimesh::TriMesh;

use thiserror::Error;

use crate::conformal::ConformalError;
use crate::motion::MotionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error(transparent)]
    Conformal(#[from] ConformalError),
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error("triangle {triangle} references vertex {index}, mesh has {vertices}")]
    IndexOutOfRange { triangle: usize, index: usize, vertices: usize },
    #[error("triangle {triangle} is degenerate (area {area:e})")]
    Degenerate { triangle: usize, area: f64 },
    #[error("edge ({0}, {1}) is traversed twice in the same direction")]
    InconsistentOrientation(usize, usize),
    #[error("edge ({a}, {b}) has {count} incident triangles")]
    NonManifold { a: usize, b: usize, count: usize },
    #[error("{positions} positions but {weights} weight lists")]
    WeightCount { positions: usize, weights: usize },
    #[error("edge endpoints are not on opposite sides of the plane")]
    SameSide,
    #[error("edge endpoint lies on the plane")]
    EndpointOnPlane,
}
