//! Byte layout of a transform update, little-endian throughout:
//!
//! | offset | size | field                 |
//! |--------|------|-----------------------|
//! | 0      | 4    | object id, `u32`      |
//! | 4      | 4    | sequence, `u32`       |
//! | 8      | 8    | timestamp, `f64` secs |
//! | 16     | 1    | encoding tag, `u8`    |
//! | 17     | 4·n  | payload, `f32` × n    |
//!
//! Tags: 0 = Matrix16 (column-major 4×4), 1 = QuatVec7 `(w, x, y, z, tx, ty, tz)`,
//! 2 = Motor8 `(1, e12, e13, e23, e1∞, e2∞, e3∞, e123∞)`, 3 = Motor8 followed
//! by a uniform scale.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::NetError;
use crate::conformal::{matrix_from_motor, Motor, Quaternion};
use crate::motion::{normalize_motor, QuatVec, EQUIVALENCE_TOLERANCE};
use crate::{Mat4, Vec3};

pub const HEADER_BYTES: usize = 17;
/// Largest `‖M M̃ − 1‖∞` accepted after renormalizing a decoded motor.
pub const MOTOR_DECODE_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Matrix16,
    QuatVec7,
    Motor8,
    Motor8Scale,
}

impl Encoding {
    pub const ALL: [Encoding; 4] = [Encoding::Matrix16, Encoding::QuatVec7, Encoding::Motor8, Encoding::Motor8Scale];

    pub fn tag(self) -> u8 {
        match self {
            Encoding::Matrix16 => 0,
            Encoding::QuatVec7 => 1,
            Encoding::Motor8 => 2,
            Encoding::Motor8Scale => 3,
        }
    }

    pub fn from_tag(tag: u8) -> Result<Self, NetError> {
        Encoding::ALL.into_iter().find(|e| e.tag() == tag).ok_or(NetError::UnknownTag(tag))
    }

    pub fn payload_floats(self) -> usize {
        match self {
            Encoding::Matrix16 => 16,
            Encoding::QuatVec7 => 7,
            Encoding::Motor8 => 8,
            Encoding::Motor8Scale => 9,
        }
    }

    pub fn payload_bytes(self) -> usize {
        4 * self.payload_floats()
    }

    pub fn packet_bytes(self) -> usize {
        HEADER_BYTES + self.payload_bytes()
    }

    pub fn name(self) -> &'static str {
        match self {
            Encoding::Matrix16 => "matrix16",
            Encoding::QuatVec7 => "quatvec7",
            Encoding::Motor8 => "motor8",
            Encoding::Motor8Scale => "motor8scale",
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Encoding {
    type Err = NetError;

    fn from_str(s: &str) -> Result<Self, NetError> {
        Encoding::ALL
            .into_iter()
            .find(|e| e.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| NetError::BadConfig(format!("unknown encoding '{s}'")))
    }
}

/// An object pose at one instant in all three forms, plus a uniform scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseSample {
    pub time: f64,
    pub object_id: u32,
    pub motor: Motor,
    pub scale: f64,
    pub matrix: Mat4,
    pub quatvec: QuatVec,
}

impl PoseSample {
    /// From a rigid motor; scale 1.
    pub fn new(time: f64, object_id: u32, motor: Motor) -> Result<Self, NetError> {
        Self::with_scale(time, object_id, motor, 1.0)
    }

    /// Pose `x ↦ M (s x)`.
    pub fn with_scale(time: f64, object_id: u32, motor: Motor, scale: f64) -> Result<Self, NetError> {
        if !(time.is_finite() && scale.is_finite() && scale > 0.0) {
            return Err(NetError::NonFinite);
        }
        let motor = normalize_motor(&motor)?.motor;
        let rigid = matrix_from_motor(&motor)?;
        let quatvec = QuatVec::from_matrix(&rigid);
        let probe = Vec3::new(0.3, -0.7, 1.1);
        let deviation = (quatvec.transform_point(&probe) - motor.apply_point(&probe)?).amax();
        if deviation > EQUIVALENCE_TOLERANCE {
            return Err(crate::motion::MotionError::Equivalence { bone: object_id as usize, deviation }.into());
        }
        let mut matrix = rigid;
        for j in 0..3 {
            for i in 0..3 {
                matrix[(i, j)] *= scale;
            }
        }
        Ok(PoseSample { time, object_id, motor, scale, matrix, quatvec })
    }

    pub fn transform_point(&self, x: &Vec3) -> Vec3 {
        self.quatvec.transform_point(&(x * self.scale))
    }

    pub fn payload(&self, encoding: Encoding) -> Result<Vec<f32>, NetError> {
        let v: Vec<f64> = match encoding {
            Encoding::Matrix16 => self.matrix.as_slice().to_vec(),
            Encoding::QuatVec7 => {
                let q = self.quatvec.rotation;
                let t = self.quatvec.translation;
                vec![q.w, q.x, q.y, q.z, t.x, t.y, t.z]
            }
            Encoding::Motor8 => self.motor.to_motor8()?.to_vec(),
            Encoding::Motor8Scale => {
                let mut v = self.motor.to_motor8()?.to_vec();
                v.push(self.scale);
                v
            }
        };
        Ok(v.into_iter().map(|x| x as f32).collect())
    }
}

/// One wire packet.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformUpdate {
    pub object_id: u32,
    pub seq: u32,
    pub timestamp: f64,
    pub encoding: Encoding,
    pub payload: Vec<f32>,
}

impl TransformUpdate {
    pub fn from_sample(sample: &PoseSample, seq: u32, encoding: Encoding) -> Result<Self, NetError> {
        Ok(TransformUpdate {
            object_id: sample.object_id,
            seq,
            timestamp: sample.time,
            encoding,
            payload: sample.payload(encoding)?,
        })
    }

    pub fn wire_len(&self) -> usize {
        HEADER_BYTES + 4 * self.payload.len()
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.wire_len());
        out.extend_from_slice(&self.object_id.to_le_bytes());
        out.extend_from_slice(&self.seq.to_le_bytes());
        out.extend_from_slice(&self.timestamp.to_le_bytes());
        out.push(self.encoding.tag());
        for x in &self.payload {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }

    /// Interpret the payload as a pose.
    pub fn pose(&self) -> Result<DecodedPose, NetError> {
        if !self.payload.iter().all(|x| x.is_finite()) {
            return Err(NetError::NonFinite);
        }
        let p: Vec<f64> = self.payload.iter().map(|&x| x as f64).collect();
        Ok(match self.encoding {
            Encoding::Matrix16 => DecodedPose::Matrix(Mat4::from_column_slice(&p)),
            Encoding::QuatVec7 => {
                let q = Quaternion::new(p[0], p[1], p[2], p[3]);
                if !(q.norm() > 1e-6) {
                    return Err(NetError::NonFinite);
                }
                DecodedPose::QuatVec(QuatVec { rotation: q.normalized(), translation: Vec3::new(p[4], p[5], p[6]) })
            }
            Encoding::Motor8 | Encoding::Motor8Scale => {
                let mut c = [0.0; 8];
                c.copy_from_slice(&p[..8]);
                let raw = Motor::from_motor8(&c)?;
                let n = normalize_motor(&raw).map_err(|e| match e {
                    crate::motion::MotionError::Conformal(crate::conformal::ConformalError::NormalizationResidual(
                        r,
                    )) => NetError::NotAVersor(r),
                    e => e.into(),
                })?;
                if n.residual > MOTOR_DECODE_TOLERANCE {
                    return Err(NetError::NotAVersor(n.residual));
                }
                let scale = if self.encoding == Encoding::Motor8Scale { p[8] } else { 1.0 };
                if !(scale > 0.0) {
                    return Err(NetError::NonFinite);
                }
                DecodedPose::Motor { motor: n.motor, scale }
            }
        })
    }
}

/// Sample, sequence number and encoding to bytes.
pub fn encode_update(sample: &PoseSample, seq: u32, encoding: Encoding) -> Result<Vec<u8>, NetError> {
    Ok(TransformUpdate::from_sample(sample, seq, encoding)?.encode())
}

pub fn decode_update(bytes: &[u8]) -> Result<TransformUpdate, NetError> {
    if bytes.len() < HEADER_BYTES {
        return Err(NetError::Truncated { need: HEADER_BYTES, got: bytes.len() });
    }
    let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let encoding = Encoding::from_tag(bytes[16])?;
    let need = HEADER_BYTES + encoding.payload_bytes();
    if bytes.len() < need {
        return Err(NetError::Truncated { need, got: bytes.len() });
    }
    let payload = bytes[HEADER_BYTES..need].chunks_exact(4).map(|c| f32::from_le_bytes(c.try_into().unwrap())).collect();
    Ok(TransformUpdate {
        object_id: u32_at(0),
        seq: u32_at(4),
        timestamp: f64::from_le_bytes(bytes[8..16].try_into().unwrap()),
        encoding,
        payload,
    })
}

/// A received pose, in the form its encoding carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecodedPose {
    Matrix(Mat4),
    QuatVec(QuatVec),
    Motor { motor: Motor, scale: f64 },
}

impl DecodedPose {
    pub fn transform_point(&self, x: &Vec3) -> Result<Vec3, NetError> {
        Ok(match self {
            DecodedPose::Matrix(m) => m.transform_point(&nalgebra::Point3::from(*x)).coords,
            DecodedPose::QuatVec(q) => q.transform_point(x),
            DecodedPose::Motor { motor, scale } => motor.apply_point(&(x * *scale))?,
        })
    }
}
