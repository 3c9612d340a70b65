use super::{motor_lerp, MatrixBlend, MotionError, EQUIVALENCE_TOLERANCE};
use crate::conformal::{matrix_from_motor, motor_from_matrix, Motor};
use crate::Mat4;

/// Per-bone global transforms at one time, in both forms.
#[derive(Debug, Clone, PartialEq)]
pub struct Keyframe {
    pub time: f64,
    matrices: Vec<Mat4>,
    motors: Vec<Motor>,
}

impl Keyframe {
    /// Derive the motor twins from `matrices`.
    pub fn new(time: f64, matrices: Vec<Mat4>) -> Result<Self, MotionError> {
        if !time.is_finite() {
            return Err(MotionError::NonFinite);
        }
        let mut motors = Vec::with_capacity(matrices.len());
        for (bone, m) in matrices.iter().enumerate() {
            let motor = motor_from_matrix(m)?;
            let deviation = (matrix_from_motor(&motor)? - m).amax();
            if deviation > EQUIVALENCE_TOLERANCE {
                return Err(MotionError::Equivalence { bone, deviation });
            }
            motors.push(motor);
        }
        Ok(Keyframe { time, matrices, motors })
    }

    pub fn matrices(&self) -> &[Mat4] {
        &self.matrices
    }

    pub fn motors(&self) -> &[Motor] {
        &self.motors
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnimationClip {
    keyframes: Vec<Keyframe>,
}

impl AnimationClip {
    pub fn new(keyframes: Vec<Keyframe>) -> Result<Self, MotionError> {
        if keyframes.is_empty() {
            return Err(MotionError::EmptyClip);
        }
        let bones = keyframes[0].matrices.len();
        for (i, k) in keyframes.iter().enumerate() {
            if k.matrices.len() != bones {
                return Err(MotionError::PoseLength { expected: bones, got: k.matrices.len() });
            }
            if i > 0 && !(k.time > keyframes[i - 1].time) {
                return Err(MotionError::UnsortedKeyframes { index: i });
            }
        }
        Ok(AnimationClip { keyframes })
    }

    pub fn keyframes(&self) -> &[Keyframe] {
        &self.keyframes
    }

    pub fn bone_count(&self) -> usize {
        self.keyframes[0].matrices.len()
    }

    pub fn start(&self) -> f64 {
        self.keyframes[0].time
    }

    pub fn end(&self) -> f64 {
        self.keyframes[self.keyframes.len() - 1].time
    }

    /// Keyframe indices bracketing `time` and the blend factor between them,
    /// clamped to the clip range. A time equal to a keyframe returns that
    /// keyframe with factor 0.
    pub fn bracket(&self, time: f64) -> (usize, usize, f64) {
        let ks = &self.keyframes;
        if time <= ks[0].time {
            return (0, 0, 0.0);
        }
        let last = ks.len() - 1;
        if time >= ks[last].time {
            return (last, last, 0.0);
        }
        // first keyframe strictly after `time`
        let j = ks.partition_point(|k| k.time <= time);
        let i = j - 1;
        let alpha = (time - ks[i].time) / (ks[j].time - ks[i].time);
        (i, j, alpha)
    }
}

/// Per-bone motors at `time`, by motor LERP between bracketing keyframes.
pub fn sample_clip(clip: &AnimationClip, time: f64) -> Result<Vec<Motor>, MotionError> {
    if !time.is_finite() {
        return Err(MotionError::NonFinite);
    }
    let (i, j, alpha) = clip.bracket(time);
    let (a, b) = (&clip.keyframes[i].motors, &clip.keyframes[j].motors);
    a.iter().zip(b).map(|(ma, mb)| motor_lerp(ma, mb, alpha)).collect()
}

/// Per-bone matrices at `time` for the matrix baseline.
pub fn sample_clip_matrices(
    clip: &AnimationClip,
    time: f64,
    blend: MatrixBlend,
) -> Result<Vec<Mat4>, MotionError> {
    if !time.is_finite() {
        return Err(MotionError::NonFinite);
    }
    let (i, j, alpha) = clip.bracket(time);
    let (a, b) = (&clip.keyframes[i].matrices, &clip.keyframes[j].matrices);
    if alpha == 0.0 {
        return Ok(a.clone());
    }
    Ok(a.iter().zip(b).map(|(ma, mb)| blend.apply(ma, mb, alpha)).collect())
}
