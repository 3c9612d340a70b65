use super::MotionError;
use crate::conformal::{matrix_from_motor, Motor, Quaternion};
use crate::{Mat4, Vec3};

/// Result of [`normalize_motor`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedMotor {
    pub motor: Motor,
    /// `‖M M̃ − 1‖∞` left after normalization.
    pub residual: f64,
}

/// Rescale `m` so that `M M̃ = 1`.
pub fn normalize_motor(m: &Motor) -> Result<NormalizedMotor, MotionError> {
    let (motor, residual) = m.normalized_with_residual().map_err(MotionError::from_normalize)?;
    Ok(NormalizedMotor { motor, residual })
}

/// Normalized linear interpolation of motors.
///
/// `b` is negated first when `⟨a b̃⟩₀ < 0` so the blend takes the short way
/// round the double cover. `t` is clamped to `[0, 1]`; the endpoints return
/// the inputs unchanged.
pub fn motor_lerp(a: &Motor, b: &Motor, t: f64) -> Result<Motor, MotionError> {
    if !t.is_finite() {
        return Err(MotionError::NonFinite);
    }
    let t = t.clamp(0.0, 1.0);
    if t == 0.0 {
        return Ok(*a);
    }
    if t == 1.0 {
        return Ok(*b);
    }
    let aligned = if (*a.mv() * b.mv().reverse()).scalar_part() < 0.0 { b.negated() } else { *b };
    Ok(normalize_motor(&Motor::blend(a, &aligned, t))?.motor)
}

/// How the matrix baseline interpolates between keyframes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixBlend {
    /// Plain entrywise LERP; the rotation block shrinks and shears.
    Entrywise,
    /// Entrywise LERP followed by Gram–Schmidt on the rotation block.
    Orthonormalized,
}

pub fn matrix_lerp(a: &Mat4, b: &Mat4, t: f64) -> Mat4 {
    a * (1.0 - t) + b * t
}

/// Entrywise LERP, Gram–Schmidt, then the keyframes' uniform scales
/// interpolated linearly and reapplied.
pub fn matrix_lerp_orthonormalized(a: &Mat4, b: &Mat4, t: f64) -> Mat4 {
    let scale = uniform_scale(a) * (1.0 - t) + uniform_scale(b) * t;
    let mut m = orthonormalize(&matrix_lerp(a, b, t));
    m.fixed_view_mut::<3, 3>(0, 0).scale_mut(scale);
    m
}

fn uniform_scale(m: &Mat4) -> f64 {
    m.fixed_view::<3, 3>(0, 0).determinant().abs().cbrt()
}

impl MatrixBlend {
    pub fn apply(self, a: &Mat4, b: &Mat4, t: f64) -> Mat4 {
        match self {
            MatrixBlend::Entrywise => matrix_lerp(a, b, t),
            MatrixBlend::Orthonormalized => matrix_lerp_orthonormalized(a, b, t),
        }
    }
}

fn any_perpendicular(v: &Vec3) -> Vec3 {
    let trial = if v.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    v.cross(&trial).normalize()
}

/// Gram–Schmidt on the upper 3×3 block, producing a proper rotation.
/// Degenerate columns fall back to an arbitrary orthogonal completion.
pub fn orthonormalize(m: &Mat4) -> Mat4 {
    let col = |j: usize| Vec3::new(m[(0, j)], m[(1, j)], m[(2, j)]);
    let (a0, a1, a2) = (col(0), col(1), col(2));
    let c0 = if a0.norm() > 1e-12 {
        a0.normalize()
    } else {
        let fallback = a1.cross(&a2);
        if fallback.norm() > 1e-12 {
            fallback.normalize()
        } else {
            Vec3::x()
        }
    };
    let r1 = a1 - c0 * a1.dot(&c0);
    let c1 = if r1.norm() > 1e-12 { r1.normalize() } else { any_perpendicular(&c0) };
    let c2 = c0.cross(&c1);
    let mut out = *m;
    for (j, c) in [c0, c1, c2].iter().enumerate() {
        for i in 0..3 {
            out[(i, j)] = c[i];
        }
    }
    out
}

/// `‖AᵀA − I‖_F` of the upper 3×3 block.
pub fn orthonormality_defect(m: &Mat4) -> f64 {
    let a = m.fixed_view::<3, 3>(0, 0);
    (a.transpose() * a - nalgebra::Matrix3::identity()).norm()
}

/// Rotation quaternion plus translation vector, the second baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuatVec {
    pub rotation: Quaternion,
    pub translation: Vec3,
}

impl QuatVec {
    pub fn from_motor(m: &Motor) -> Result<Self, MotionError> {
        let mat = matrix_from_motor(m)?;
        Ok(QuatVec::from_matrix(&mat))
    }

    /// Rotation and translation of a rigid matrix.
    pub fn from_matrix(m: &Mat4) -> Self {
        let r: nalgebra::Matrix3<f64> = m.fixed_view::<3, 3>(0, 0).into_owned();
        QuatVec {
            rotation: Quaternion::from_rotation_matrix(&r),
            translation: Vec3::new(m[(0, 3)], m[(1, 3)], m[(2, 3)]),
        }
    }

    /// SLERP on the rotation, LERP on the translation.
    pub fn interpolate(&self, other: &QuatVec, t: f64) -> QuatVec {
        QuatVec {
            rotation: self.rotation.slerp(&other.rotation, t),
            translation: self.translation.lerp(&other.translation, t),
        }
    }

    pub fn transform_point(&self, x: &Vec3) -> Vec3 {
        self.rotation.rotate(x) + self.translation
    }

    pub fn to_matrix(&self) -> Mat4 {
        let mut m = Mat4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.rotation.to_rotation_matrix());
        for i in 0..3 {
            m[(i, 3)] = self.translation[i];
        }
        m
    }
}
