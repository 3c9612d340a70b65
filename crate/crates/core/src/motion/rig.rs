use serde::{Deserialize, Serialize};

use super::{MotionError, EQUIVALENCE_TOLERANCE, WEIGHT_SUM_TOLERANCE};
use crate::conformal::{matrix_from_motor, motor_from_matrix, up, ConformalPoint, Motor};
use crate::{Mat4, Vec3};

/// Most bone influences a vertex may carry in the scene format.
pub const MAX_INFLUENCES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Influence {
    pub bone: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bone {
    pub name: String,
    pub parent: Option<usize>,
    offset_matrix: Mat4,
    offset_motor: Motor,
}

impl Bone {
    /// Bone with bind-inverse `offset`; the motor twin is derived from it.
    pub fn new(name: impl Into<String>, parent: Option<usize>, offset: Mat4) -> Result<Self, MotionError> {
        let offset_motor = motor_from_matrix(&offset)?;
        Ok(Bone { name: name.into(), parent, offset_matrix: offset, offset_motor })
    }

    pub fn offset_matrix(&self) -> &Mat4 {
        &self.offset_matrix
    }

    pub fn offset_motor(&self) -> &Motor {
        &self.offset_motor
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rig {
    bones: Vec<Bone>,
}

impl Rig {
    pub fn new(bones: Vec<Bone>) -> Result<Self, MotionError> {
        let n = bones.len();
        for (i, b) in bones.iter().enumerate() {
            if let Some(p) = b.parent {
                if p >= n {
                    return Err(MotionError::ParentOutOfRange { bone: i, parent: p });
                }
            }
            // walk up; a chain longer than n means a cycle
            let mut cur = b.parent;
            let mut steps = 0;
            while let Some(p) = cur {
                steps += 1;
                if steps > n {
                    return Err(MotionError::CyclicHierarchy { bone: i });
                }
                cur = bones[p].parent;
            }
            let back = matrix_from_motor(&b.offset_motor)?;
            let deviation = (back - b.offset_matrix).amax();
            if deviation > EQUIVALENCE_TOLERANCE {
                return Err(MotionError::Equivalence { bone: i, deviation });
            }
        }
        Ok(Rig { bones })
    }

    pub fn bones(&self) -> &[Bone] {
        &self.bones
    }

    pub fn len(&self) -> usize {
        self.bones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bones.is_empty()
    }
}

/// Rest-pose vertices with their conformal twins and bone weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SkinnedMesh {
    positions: Vec<Vec3>,
    conformal: Vec<ConformalPoint>,
    influences: Vec<Vec<Influence>>,
}

pub(crate) fn check_weights(vertex: usize, influences: &[Influence]) -> Result<(), MotionError> {
    if influences.is_empty() {
        return Err(MotionError::NoInfluences { vertex });
    }
    let mut sum = 0.0;
    for inf in influences {
        if !(inf.weight.is_finite() && inf.weight >= 0.0) {
            return Err(MotionError::BadWeight { vertex, weight: inf.weight });
        }
        sum += inf.weight;
    }
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(MotionError::WeightSum { vertex, sum });
    }
    Ok(())
}

impl SkinnedMesh {
    pub fn new(positions: Vec<Vec3>, influences: Vec<Vec<Influence>>) -> Result<Self, MotionError> {
        if positions.len() != influences.len() {
            return Err(MotionError::LengthMismatch { left: positions.len(), right: influences.len() });
        }
        for (i, inf) in influences.iter().enumerate() {
            check_weights(i, inf)?;
        }
        let conformal = positions.iter().map(up).collect::<Result<Vec<_>, _>>()?;
        Ok(SkinnedMesh { positions, conformal, influences })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn conformal(&self) -> &[ConformalPoint] {
        &self.conformal
    }

    pub fn influences(&self) -> &[Vec<Influence>] {
        &self.influences
    }

    pub(crate) fn check_bones(&self, bones: usize) -> Result<(), MotionError> {
        for (vertex, inf) in self.influences.iter().enumerate() {
            if let Some(bad) = inf.iter().find(|i| i.bone >= bones) {
                return Err(MotionError::BoneOutOfRange { vertex, bone: bad.bone, bones });
            }
        }
        Ok(())
    }
}
