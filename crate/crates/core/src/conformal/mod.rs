//! The conformal model of Euclidean 3-space inside `Cl(4,1)`.
//!
//! Basis conventions used throughout the crate:
//!
//! * `e1, e2, e3` are the Euclidean directions, `e4` squares to `+1`, `e5` to `-1`.
//! * `e∞ = e4 + e5` and `e₀ = ½(e5 − e4)`, so `e∞² = e₀² = 0` and `e∞·e₀ = −1`.
//! * A point is `up(x) = x + ½|x|² e∞ + e₀`.
//! * A plane is `n̂ + d e∞`; `up(x)·π = x·n̂ − d`, positive on the normal side.

mod interop;
mod plane;
mod point;
mod versors;

pub use interop::{
    dual_quaternion_from_motor, matrix_from_motor, motor_from_dual_quaternion, motor_from_matrix,
    quaternion_from_rotor, rotor_from_quaternion, DualQuaternion, Quaternion,
};
pub use plane::{plane, point_pair, CutPlane};
pub use point::{down, up, ConformalPoint};
pub use versors::{
    dilator, motor_compose, rotor_from_axis_angle, translator, Dilator, Motor, PreparedMotor, Rotor,
    Translator,
    MOTOR8_MASKS, NORMALIZE_RESIDUAL_LIMIT,
};

use thiserror::Error;

use crate::algebra::{AlgebraError, Multivector, Signature};

pub(crate) mod mask {
    pub const E1: usize = 0b00001;
    pub const E2: usize = 0b00010;
    pub const E3: usize = 0b00100;
    pub const E4: usize = 0b01000;
    pub const E5: usize = 0b10000;
    pub const E12: usize = E1 | E2;
    pub const E13: usize = E1 | E3;
    pub const E23: usize = E2 | E3;
    pub const E45: usize = E4 | E5;
    pub const E123: usize = E1 | E2 | E3;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConformalError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("non-finite input")]
    NonFinite,
    #[error("point at infinity: e0 weight {weight:e}")]
    PointAtInfinity { weight: f64 },
    #[error("expected a CGA element, got {0}")]
    WrongSignature(Signature),
    #[error("zero rotation axis")]
    ZeroAxis,
    #[error("zero plane normal")]
    ZeroNormal,
    #[error("dilation factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("quaternion norm {norm} is not unit")]
    NonUnitQuaternion { norm: f64 },
    #[error("matrix is not affine (bottom row {row:?})")]
    NotAffine { row: [f64; 4] },
    #[error("matrix has a reflection or is singular (det {det:e})")]
    NotProper { det: f64 },
    #[error("matrix has non-uniform scale or shear (deviation {deviation:e})")]
    NonUniformScale { deviation: f64 },
    #[error("motor has support outside the rigid 8-blade set (max stray {stray:e})")]
    NotRigid { stray: f64 },
    #[error("multivector is not even-graded")]
    NotEven,
    #[error("motor norm {0:e} too small to normalize")]
    DegenerateNorm(f64),
    #[error("motor not a versor after normalization (residual {0:e})")]
    NormalizationResidual(f64),
}

/// `e∞ = e4 + e5`.
pub fn e_inf() -> Multivector {
    let mut m = Multivector::zero(Signature::CGA);
    m.set(mask::E4, 1.0);
    m.set(mask::E5, 1.0);
    m
}

/// `e₀ = ½(e5 − e4)`.
pub fn e_origin() -> Multivector {
    let mut m = Multivector::zero(Signature::CGA);
    m.set(mask::E4, -0.5);
    m.set(mask::E5, 0.5);
    m
}

/// Grade-1 CGA element with Euclidean components only.
pub fn euclidean_vector(x: &crate::Vec3) -> Multivector {
    let mut m = Multivector::zero(Signature::CGA);
    m.set(mask::E1, x.x);
    m.set(mask::E2, x.y);
    m.set(mask::E3, x.z);
    m
}

pub(crate) fn require_cga(m: &Multivector) -> Result<(), ConformalError> {
    if m.signature() != Signature::CGA {
        return Err(ConformalError::WrongSignature(m.signature()));
    }
    Ok(())
}
