use super::{mask, require_cga, ConformalError};
use crate::algebra::{Multivector, Signature};
use crate::Vec3;

/// Normalized null vector representing a Euclidean point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalPoint(Multivector);

impl ConformalPoint {
    pub fn mv(&self) -> &Multivector {
        &self.0
    }

    pub fn into_inner(self) -> Multivector {
        self.0
    }

    pub fn euclidean(&self) -> Vec3 {
        Vec3::new(self.0.get(mask::E1), self.0.get(mask::E2), self.0.get(mask::E3))
    }
}

impl From<ConformalPoint> for Multivector {
    fn from(p: ConformalPoint) -> Multivector {
        p.0
    }
}

/// `x + ½|x|² e∞ + e₀`.
pub fn up(x: &Vec3) -> Result<ConformalPoint, ConformalError> {
    if !(x.x.is_finite() && x.y.is_finite() && x.z.is_finite()) {
        return Err(ConformalError::NonFinite);
    }
    let half_sq = 0.5 * x.norm_squared();
    let mut m = Multivector::zero(Signature::CGA);
    m.set(mask::E1, x.x);
    m.set(mask::E2, x.y);
    m.set(mask::E3, x.z);
    m.set(mask::E4, half_sq - 0.5);
    m.set(mask::E5, half_sq + 0.5);
    Ok(ConformalPoint(m))
}

/// Homogeneous weight `−P·e∞`, which is the `e₀` coefficient of `P`.
pub(crate) fn origin_weight(p: &Multivector) -> f64 {
    p.get(mask::E5) - p.get(mask::E4)
}

/// Euclidean point of a (possibly unnormalized) conformal point.
pub fn down(p: &Multivector) -> Result<Vec3, ConformalError> {
    require_cga(p)?;
    let w = origin_weight(p);
    if !w.is_finite() || w.abs() <= 1e-12 {
        return Err(ConformalError::PointAtInfinity { weight: w });
    }
    Ok(Vec3::new(p.get(mask::E1), p.get(mask::E2), p.get(mask::E3)) / w)
}
