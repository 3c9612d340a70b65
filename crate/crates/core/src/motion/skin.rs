use super::{MotionError, Rig, SkinnedMesh};
use crate::conformal::{down, ConformalError, Motor};
use crate::par::{try_map_indexed, Execution};
use crate::{Mat4, Multivector, Signature, Vec3};

/// Deformed vertex positions at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedFrame {
    pub time: f64,
    pub positions: Vec<Vec3>,
}

impl DeformedFrame {
    pub fn at(mut self, time: f64) -> Self {
        self.time = time;
        self
    }
}

fn check_pose_len(rig: &Rig, got: usize) -> Result<(), MotionError> {
    if got != rig.len() {
        return Err(MotionError::PoseLength { expected: rig.len(), got });
    }
    Ok(())
}

/// Linear blend skinning: `V[m] = Σ w T_n O_n v[m]`, then the homogeneous divide.
pub fn skin_lbs(mesh: &SkinnedMesh, rig: &Rig, pose: &[Mat4]) -> Result<DeformedFrame, MotionError> {
    skin_lbs_with(mesh, rig, pose, Execution::default())
}

pub fn skin_lbs_with(
    mesh: &SkinnedMesh,
    rig: &Rig,
    pose: &[Mat4],
    exec: Execution,
) -> Result<DeformedFrame, MotionError> {
    check_pose_len(rig, pose.len())?;
    mesh.check_bones(rig.len())?;
    let skinning: Vec<Mat4> =
        pose.iter().zip(rig.bones()).map(|(t, b)| t * b.offset_matrix()).collect();
    let positions = try_map_indexed(mesh.len(), exec, |m| {
        let v = mesh.positions()[m].push(1.0);
        let mut acc = nalgebra::Vector4::zeros();
        for inf in &mesh.influences()[m] {
            acc += (skinning[inf.bone] * v) * inf.weight;
        }
        if !(acc.w.abs() > 1e-12) {
            return Err(MotionError::NonFinite);
        }
        Ok(acc.xyz() / acc.w)
    })?;
    Ok(DeformedFrame { time: 0.0, positions })
}

/// Motor skinning: `C[m] = Σ w (M_n B_n) c[m] (M_n B_n)⁻¹`, then `down`.
///
/// Each bone's image of `c[m]` is rescaled to unit `e₀` weight before
/// blending. Rigid motors already produce unit weight; dilated ones scale it
/// by `1/s`, and without the rescale the blend would weight bones unevenly.
pub fn skin_cga(mesh: &SkinnedMesh, rig: &Rig, pose: &[Motor]) -> Result<DeformedFrame, MotionError> {
    skin_cga_with(mesh, rig, pose, Execution::default())
}

pub fn skin_cga_with(
    mesh: &SkinnedMesh,
    rig: &Rig,
    pose: &[Motor],
    exec: Execution,
) -> Result<DeformedFrame, MotionError> {
    check_pose_len(rig, pose.len())?;
    mesh.check_bones(rig.len())?;
    let composites = pose
        .iter()
        .zip(rig.bones())
        .map(|(m, b)| (*m * *b.offset_motor()).prepared())
        .collect::<Result<Vec<_>, ConformalError>>()?;
    let positions = try_map_indexed(mesh.len(), exec, |m| {
        let c = mesh.conformal()[m].mv();
        let mut acc = Multivector::zero(Signature::CGA);
        for inf in &mesh.influences()[m] {
            acc += composites[inf.bone].transform_conformal(c)? * inf.weight;
        }
        Ok::<Vec3, MotionError>(down(&acc)?)
    })?;
    Ok(DeformedFrame { time: 0.0, positions })
}
