use super::{e_inf, euclidean_vector, up, ConformalError, ConformalPoint};
use crate::algebra::Multivector;
use crate::Vec3;

/// `π = n̂ + d e∞`, the plane `x·n̂ = d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPlane {
    mv: Multivector,
    normal: Vec3,
    offset: f64,
}

impl CutPlane {
    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `up(x)·π = x·n̂ − d`: positive on the normal side.
    pub fn incidence(&self, x: &Vec3) -> Result<f64, ConformalError> {
        Ok(up(x)?.mv().inner_product(&self.mv)?.scalar_part())
    }
}

/// Plane with unit normal `n / |n|` at offset `d` along it.
pub fn plane(n: &Vec3, d: f64) -> Result<CutPlane, ConformalError> {
    if !(n.iter().all(|x| x.is_finite()) && d.is_finite()) {
        return Err(ConformalError::NonFinite);
    }
    let len = n.norm();
    if len <= 1e-12 {
        return Err(ConformalError::ZeroNormal);
    }
    let normal = n / len;
    Ok(CutPlane { mv: euclidean_vector(&normal) + e_inf() * d, normal, offset: d })
}

/// Outer product `a ∧ b`.
pub fn point_pair(a: &ConformalPoint, b: &ConformalPoint) -> Multivector {
    *a.mv() ^ *b.mv()
}
