//! Conversions between motors and the usual engine representations.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::versors::Rotor;
use super::{dilator, mask, translator, ConformalError, Motor};
use crate::algebra::{Multivector, Signature};
use crate::{Mat4, Vec3};

/// Hamilton quaternion `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn pure(v: &Vec3) -> Self {
        Quaternion::new(0.0, v.x, v.y, v.z)
    }

    pub fn from_axis_angle(axis: &Vec3, angle: f64) -> Self {
        let n = axis.normalize();
        let (s, c) = (0.5 * angle).sin_cos();
        Quaternion::new(c, s * n.x, s * n.y, s * n.z)
    }

    pub fn vector(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn dot(&self, o: &Quaternion) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(&self) -> Quaternion {
        self.scale(1.0 / self.norm())
    }

    pub fn scale(&self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn add(&self, o: &Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn conjugate(&self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// `q v q*` for a unit quaternion.
    pub fn rotate(&self, v: &Vec3) -> Vec3 {
        (*self * Quaternion::pure(v) * self.conjugate()).vector()
    }

    /// Shortest-arc spherical interpolation.
    pub fn slerp(&self, other: &Quaternion, t: f64) -> Quaternion {
        let mut b = *other;
        let mut cos = self.dot(&b);
        if cos < 0.0 {
            b = b.scale(-1.0);
            cos = -cos;
        }
        if cos > 1.0 - 1e-12 {
            return self.scale(1.0 - t).add(&b.scale(t)).normalized();
        }
        let theta = cos.min(1.0).acos();
        let sin = theta.sin();
        let wa = ((1.0 - t) * theta).sin() / sin;
        let wb = (t * theta).sin() / sin;
        self.scale(wa).add(&b.scale(wb))
    }

    pub fn to_rotation_matrix(&self) -> nalgebra::Matrix3<f64> {
        let Quaternion { w, x, y, z } = *self;
        nalgebra::Matrix3::new(
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        )
    }

    /// Shepperd's method; `r` must be a proper rotation.
    pub fn from_rotation_matrix(r: &nalgebra::Matrix3<f64>) -> Quaternion {
        let tr = r[(0, 0)] + r[(1, 1)] + r[(2, 2)];
        let q = if tr > 0.0 {
            let s = (tr + 1.0).sqrt() * 2.0;
            Quaternion::new(
                0.25 * s,
                (r[(2, 1)] - r[(1, 2)]) / s,
                (r[(0, 2)] - r[(2, 0)]) / s,
                (r[(1, 0)] - r[(0, 1)]) / s,
            )
        } else if r[(0, 0)] > r[(1, 1)] && r[(0, 0)] > r[(2, 2)] {
            let s = (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).sqrt() * 2.0;
            Quaternion::new(
                (r[(2, 1)] - r[(1, 2)]) / s,
                0.25 * s,
                (r[(0, 1)] + r[(1, 0)]) / s,
                (r[(0, 2)] + r[(2, 0)]) / s,
            )
        } else if r[(1, 1)] > r[(2, 2)] {
            let s = (1.0 + r[(1, 1)] - r[(0, 0)] - r[(2, 2)]).sqrt() * 2.0;
            Quaternion::new(
                (r[(0, 2)] - r[(2, 0)]) / s,
                (r[(0, 1)] + r[(1, 0)]) / s,
                0.25 * s,
                (r[(1, 2)] + r[(2, 1)]) / s,
            )
        } else {
            let s = (1.0 + r[(2, 2)] - r[(0, 0)] - r[(1, 1)]).sqrt() * 2.0;
            Quaternion::new(
                (r[(1, 0)] - r[(0, 1)]) / s,
                (r[(0, 2)] + r[(2, 0)]) / s,
                (r[(1, 2)] + r[(2, 1)]) / s,
                0.25 * s,
            )
        };
        q.normalized()
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

/// Unit dual quaternion `real + ε dual` with `dual = ½ t real`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualQuaternion {
    pub real: Quaternion,
    pub dual: Quaternion,
}

impl DualQuaternion {
    pub const IDENTITY: DualQuaternion = DualQuaternion {
        real: Quaternion::IDENTITY,
        dual: Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 0.0 },
    };

    /// Rotation by `q` followed by translation `t`.
    pub fn from_rotation_translation(q: &Quaternion, t: &Vec3) -> Self {
        DualQuaternion { real: *q, dual: (Quaternion::pure(t) * *q).scale(0.5) }
    }

    pub fn translation(&self) -> Vec3 {
        (self.dual * self.real.conjugate()).scale(2.0).vector()
    }

    pub fn transform_point(&self, x: &Vec3) -> Vec3 {
        self.real.rotate(x) + self.translation()
    }
}

/// `w − (x e23 + y e31 + z e12)`; rotates vectors exactly like `q v q*`.
pub fn rotor_from_quaternion(q: &Quaternion) -> Result<Rotor, ConformalError> {
    if ![q.w, q.x, q.y, q.z].iter().all(|c| c.is_finite()) {
        return Err(ConformalError::NonFinite);
    }
    let norm = q.norm();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(ConformalError::NonUnitQuaternion { norm });
    }
    let mut m = Multivector::scalar(Signature::CGA, q.w);
    m.set(mask::E23, -q.x);
    m.set(mask::E13, q.y);
    m.set(mask::E12, -q.z);
    Ok(Rotor::from_mv_unchecked(m))
}

pub fn quaternion_from_rotor(r: &Rotor) -> Quaternion {
    let m = r.mv();
    Quaternion::new(m.get(0), -m.get(mask::E23), m.get(mask::E13), -m.get(mask::E12))
}

/// Rigid motor with the same action as `dq`.
///
/// With `R(q)` the rotor of [`rotor_from_quaternion`], the motor is
/// `R(real) − R(dual) e123 e∞`, which in motor8 order reads
/// `(rw, −rz, ry, −rx, −dx, −dy, −dz, −dw)`.
pub fn motor_from_dual_quaternion(dq: &DualQuaternion) -> Result<Motor, ConformalError> {
    let (r, d) = (dq.real, dq.dual);
    let norm = r.norm();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(ConformalError::NonUnitQuaternion { norm });
    }
    Motor::from_motor8(&[r.w, -r.z, r.y, -r.x, -d.x, -d.y, -d.z, -d.w])
}

pub fn dual_quaternion_from_motor(m: &Motor) -> Result<DualQuaternion, ConformalError> {
    let c = m.to_motor8()?;
    Ok(DualQuaternion {
        real: Quaternion::new(c[0], -c[3], c[2], -c[1]),
        dual: Quaternion::new(-c[7], -c[4], -c[5], -c[6]),
    })
}

const AFFINE_TOLERANCE: f64 = 1e-12;
const UNIFORM_SCALE_TOLERANCE: f64 = 1e-6;

/// Decompose `m = T · (s R)` into `T R D(s)`.
///
/// Rejects projective rows, reflections, shear and non-uniform scale.
pub fn motor_from_matrix(m: &Mat4) -> Result<Motor, ConformalError> {
    if !m.iter().all(|x| x.is_finite()) {
        return Err(ConformalError::NonFinite);
    }
    let row = [m[(3, 0)], m[(3, 1)], m[(3, 2)], m[(3, 3)]];
    if row[..3].iter().any(|x| x.abs() > AFFINE_TOLERANCE) || (row[3] - 1.0).abs() > AFFINE_TOLERANCE {
        return Err(ConformalError::NotAffine { row });
    }
    let a: nalgebra::Matrix3<f64> = m.fixed_view::<3, 3>(0, 0).into_owned();
    let det = a.determinant();
    if !(det > 1e-300) {
        return Err(ConformalError::NotProper { det });
    }
    let gram = a.transpose() * a;
    let s2 = gram.trace() / 3.0;
    let deviation = (gram / s2 - nalgebra::Matrix3::identity()).amax();
    if deviation > UNIFORM_SCALE_TOLERANCE {
        return Err(ConformalError::NonUniformScale { deviation });
    }
    let s = s2.sqrt();
    let q = Quaternion::from_rotation_matrix(&(a / s));
    let t = Vec3::new(m[(0, 3)], m[(1, 3)], m[(2, 3)]);
    let rigid = translator(&t)?.motor() * rotor_from_quaternion(&q)?.motor();
    if (s - 1.0).abs() <= 1e-12 {
        return Ok(rigid);
    }
    Ok(rigid * dilator(s)?.motor())
}

/// Affine matrix with the same point action as `motor`.
pub fn matrix_from_motor(motor: &Motor) -> Result<Mat4, ConformalError> {
    let p = motor.prepared()?;
    let image = |x: Vec3| -> Result<Vec3, ConformalError> {
        super::down(&p.transform_point(&x)?)
    };
    let origin = image(Vec3::zeros())?;
    let mut out = Mat4::identity();
    for (j, axis) in [Vec3::x(), Vec3::y(), Vec3::z()].into_iter().enumerate() {
        let col = image(axis)? - origin;
        for i in 0..3 {
            out[(i, j)] = col[i];
        }
    }
    for i in 0..3 {
        out[(i, 3)] = origin[i];
    }
    Ok(out)
}
