//! Rigged skinning in matrix and motor form, motor interpolation, and
//! error metrics for comparing deformations and trajectories.

mod clip;
mod interp;
mod metrics;
pub(crate) mod rig;
mod skin;
pub mod turn;

pub use clip::{sample_clip, sample_clip_matrices, AnimationClip, Keyframe};
pub use interp::{
    matrix_lerp, matrix_lerp_orthonormalized, motor_lerp, normalize_motor, orthonormality_defect,
    orthonormalize, MatrixBlend, NormalizedMotor, QuatVec,
};
pub use metrics::{frame_error, ErrorStats};
pub use rig::{Bone, Influence, Rig, SkinnedMesh, MAX_INFLUENCES};
pub use skin::{skin_cga, skin_cga_with, skin_lbs, skin_lbs_with, DeformedFrame};

use thiserror::Error;

use crate::conformal::ConformalError;

/// Tolerance on per-vertex weight sums.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;
/// Tolerance on matrix/motor action equivalence.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MotionError {
    #[error(transparent)]
    Conformal(#[from] ConformalError),
    #[error("vertex {vertex}: weights sum to {sum}")]
    WeightSum { vertex: usize, sum: f64 },
    #[error("vertex {vertex}: negative or non-finite weight {weight}")]
    BadWeight { vertex: usize, weight: f64 },
    #[error("vertex {vertex} has no bone influences")]
    NoInfluences { vertex: usize },
    #[error("vertex {vertex} has {count} influences (max {MAX_INFLUENCES})")]
    TooManyInfluences { vertex: usize, count: usize },
    #[error("vertex {vertex} references bone {bone}, rig has {bones}")]
    BoneOutOfRange { vertex: usize, bone: usize, bones: usize },
    #[error("pose has {got} bone transforms, rig has {expected}")]
    PoseLength { expected: usize, got: usize },
    #[error("bone {bone} has parent {parent} out of range")]
    ParentOutOfRange { bone: usize, parent: usize },
    #[error("bone hierarchy has a cycle through bone {bone}")]
    CyclicHierarchy { bone: usize },
    #[error("bone {bone}: motor and matrix disagree by {deviation:e}")]
    Equivalence { bone: usize, deviation: f64 },
    #[error("animation clip has no keyframes")]
    EmptyClip,
    #[error("keyframe times must increase strictly (index {index})")]
    UnsortedKeyframes { index: usize },
    #[error("motor norm near zero during interpolation")]
    NearZeroNorm,
    #[error("frames have {left} and {right} points")]
    LengthMismatch { left: usize, right: usize },
    #[error("non-finite value")]
    NonFinite,
}

impl MotionError {
    pub(crate) fn from_normalize(e: ConformalError) -> Self {
        match e {
            ConformalError::DegenerateNorm(_) => MotionError::NearZeroNorm,
            other => MotionError::Conformal(other),
        }
    }
}
