//! Conformal geometric algebra kernel and its two consumers: motor-based
//! skinning with plane cutting, and a pose-synchronization simulator that
//! compares wire encodings by bandwidth and trajectory fidelity.

// `!(x > y)` is used on purpose to reject NaN along with the failing range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod conformal;
pub mod fixtures;
pub mod mesh;
pub mod motion;
pub mod netsync;
pub mod par;
pub mod scene;

pub type Vec3 = nalgebra::Vector3<f64>;
/// Affine transform; nalgebra stores it column-major, matching the file formats.
pub type Mat4 = nalgebra::Matrix4<f64>;

pub use algebra::{Multivector, Signature};
pub use conformal::{down, up, Motor};
