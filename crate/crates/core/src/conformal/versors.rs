use std::ops::Mul;

use super::point::origin_weight;
use super::{e_inf, e_origin, euclidean_vector, mask, require_cga, up, ConformalError};
use crate::algebra::{Multivector, Signature};
use crate::Vec3;

/// Canonical-basis masks of the `(1, e12, e13, e23, e1∞, e2∞, e3∞, e123∞)`
/// support of a rigid motor. Each `ei∞` slot names the `ei4` mask; the
/// matching `ei5` coefficient is equal for rigid motors.
pub const MOTOR8_MASKS: [usize; 8] = [
    0,
    mask::E12,
    mask::E13,
    mask::E23,
    mask::E1 | mask::E4,
    mask::E2 | mask::E4,
    mask::E3 | mask::E4,
    mask::E123 | mask::E4,
];

/// Largest non-scalar part of `M M̃ − 1` tolerated after normalization.
pub const NORMALIZE_RESIDUAL_LIMIT: f64 = 1e-6;

/// Even versor acting on conformal points: rotation, translation and
/// optionally an origin-centred uniform dilation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motor {
    mv: Multivector,
    dilated: bool,
}

/// `cos(θ/2) − sin(θ/2) B̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotor(Multivector);

/// `1 − ½ t e∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Translator(Multivector);

/// Origin-centred uniform scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dilator(Multivector);

macro_rules! versor_newtype {
    ($name:ident, $dilated:expr) => {
        impl $name {
            pub fn mv(&self) -> &Multivector {
                &self.0
            }

            pub fn motor(self) -> Motor {
                Motor { mv: self.0, dilated: $dilated }
            }
        }

        impl From<$name> for Motor {
            fn from(v: $name) -> Motor {
                v.motor()
            }
        }
    };
}

versor_newtype!(Rotor, false);
versor_newtype!(Translator, false);
versor_newtype!(Dilator, true);

impl Rotor {
    pub fn identity() -> Self {
        Rotor(Multivector::one(Signature::CGA))
    }

    /// The same rotor as an element of `Cl(3,0)`.
    pub fn to_ega(&self) -> Multivector {
        let mut m = Multivector::zero(Signature::EGA);
        for b in [0, mask::E12, mask::E13, mask::E23] {
            m.set(b, self.0.get(b));
        }
        m
    }

    pub(crate) fn from_mv_unchecked(mv: Multivector) -> Self {
        Rotor(mv)
    }
}

pub fn rotor_from_axis_angle(axis: &Vec3, angle: f64) -> Result<Rotor, ConformalError> {
    if !(axis.iter().all(|x| x.is_finite()) && angle.is_finite()) {
        return Err(ConformalError::NonFinite);
    }
    let norm = axis.norm();
    if norm <= 1e-12 {
        return Err(ConformalError::ZeroAxis);
    }
    let n = axis / norm;
    let (s, c) = (0.5 * angle).sin_cos();
    // dual bivector of n: n_x e23 + n_y e31 + n_z e12, with e31 = −e13
    let mut m = Multivector::scalar(Signature::CGA, c);
    m.set(mask::E23, -s * n.x);
    m.set(mask::E13, s * n.y);
    m.set(mask::E12, -s * n.z);
    Ok(Rotor(m))
}

pub fn translator(t: &Vec3) -> Result<Translator, ConformalError> {
    if !t.iter().all(|x| x.is_finite()) {
        return Err(ConformalError::NonFinite);
    }
    let m = Multivector::one(Signature::CGA) - (euclidean_vector(t) * e_inf()) * 0.5;
    Ok(Translator(m))
}

/// Scaling by `s` about the origin: `cosh(½ ln s) + sinh(½ ln s) e₀∧e∞`.
pub fn dilator(s: f64) -> Result<Dilator, ConformalError> {
    if !s.is_finite() {
        return Err(ConformalError::NonFinite);
    }
    if s <= 0.0 {
        return Err(ConformalError::NonPositiveScale(s));
    }
    let half = 0.5 * s.ln();
    let generator = e_origin() ^ e_inf();
    Ok(Dilator(Multivector::scalar(Signature::CGA, half.cosh()) + generator * half.sinh()))
}

/// Geometric product of `parts` in order; the rightmost part acts first.
pub fn motor_compose(parts: &[Motor]) -> Result<Motor, ConformalError> {
    let mut acc = Motor::identity();
    for part in parts {
        acc = Motor { mv: acc.mv * part.mv, dilated: acc.dilated || part.dilated };
    }
    acc.normalized()
}

impl Motor {
    pub fn identity() -> Self {
        Motor { mv: Multivector::one(Signature::CGA), dilated: false }
    }

    /// Wrap an even CGA versor. `dilated` records whether a scale factor may
    /// be composed in.
    pub fn from_multivector(mv: Multivector, dilated: bool) -> Result<Self, ConformalError> {
        require_cga(&mv)?;
        if mv.max_abs_diff(&mv.even_part()) != 0.0 {
            return Err(ConformalError::NotEven);
        }
        mv.versor_norm_squared()?;
        Ok(Motor { mv, dilated })
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn is_dilated(&self) -> bool {
        self.dilated
    }

    pub fn reverse(&self) -> Motor {
        Motor { mv: self.mv.reverse(), dilated: self.dilated }
    }

    pub fn inverse(&self) -> Result<Motor, ConformalError> {
        Ok(Motor { mv: self.mv.versor_inverse()?, dilated: self.dilated })
    }

    /// `M X M⁻¹`.
    pub fn transform(&self, x: &Multivector) -> Result<Multivector, ConformalError> {
        Ok(self.mv.sandwich(x)?)
    }

    /// `down(M up(x) M⁻¹)`.
    pub fn apply_point(&self, x: &Vec3) -> Result<Vec3, ConformalError> {
        let p = up(x)?;
        super::down(&self.transform(p.mv())?)
    }

    /// Bound form with a cached inverse, for applying to many points.
    pub fn prepared(&self) -> Result<PreparedMotor, ConformalError> {
        Ok(PreparedMotor::new(self.mv, self.mv.versor_inverse()?))
    }

    /// Rescale to unit norm, `M M̃ = 1`.
    ///
    /// Dividing by `sqrt(⟨M M̃⟩₀)` alone leaves a nilpotent `e123∞` term in
    /// `M M̃` for blended rigid motors (the dual part of a dual-quaternion
    /// norm), so the remaining `M M̃ = 1 + ε` is removed by multiplying with
    /// `1 − ε/2`, which is exact whenever `ε² = 0`. Returns the motor and the
    /// residual `‖⟨M M̃⟩ − 1‖∞` left afterwards.
    pub fn normalized_with_residual(&self) -> Result<(Motor, f64), ConformalError> {
        require_cga(&self.mv)?;
        let mut m = self.mv;
        let mut residual = f64::INFINITY;
        for _ in 0..4 {
            let n = m * m.reverse();
            let s = n.scalar_part();
            if !(s > 1e-12) {
                return Err(ConformalError::DegenerateNorm(s));
            }
            m = m / s.sqrt();
            let mut eps = n / s;
            eps.set(0, 0.0);
            residual = eps.norm_inf();
            if residual <= 1e-15 {
                break;
            }
            m = m * (Multivector::one(Signature::CGA) - eps * 0.5);
        }
        let mut n = m * m.reverse();
        n.set(0, n.scalar_part() - 1.0);
        residual = residual.min(n.norm_inf());
        if residual > NORMALIZE_RESIDUAL_LIMIT {
            return Err(ConformalError::NormalizationResidual(residual));
        }
        Ok((Motor { mv: m, dilated: self.dilated }, residual))
    }

    pub fn normalized(&self) -> Result<Motor, ConformalError> {
        self.normalized_with_residual().map(|(m, _)| m)
    }

    /// Largest coefficient outside the rigid 8-blade support, including any
    /// mismatch between paired `ei4`/`ei5` coefficients.
    pub fn rigid_stray(&self) -> f64 {
        const ROTOR: [usize; 4] = [0, mask::E12, mask::E13, mask::E23];
        const NULL_BASE: [usize; 4] = [mask::E1, mask::E2, mask::E3, mask::E123];
        let m = &self.mv;
        let mut stray: f64 = 0.0;
        for b in 0..32 {
            if ROTOR.contains(&b) {
                continue;
            }
            let base = b & !mask::E45;
            let null = b & mask::E45;
            if NULL_BASE.contains(&base) && null == mask::E4 {
                stray = stray.max((m.get(b) - m.get(b ^ mask::E45)).abs());
            } else if !(NULL_BASE.contains(&base) && null == mask::E5) {
                stray = stray.max(m.get(b).abs());
            }
        }
        stray
    }

    /// Coefficients in `(1, e12, e13, e23, e1∞, e2∞, e3∞, e123∞)` order.
    pub fn to_motor8(&self) -> Result<[f64; 8], ConformalError> {
        let stray = self.rigid_stray();
        if stray > 1e-9 * self.mv.norm_inf().max(1.0) {
            return Err(ConformalError::NotRigid { stray });
        }
        Ok(MOTOR8_MASKS.map(|b| self.mv.get(b)))
    }

    /// Inverse of [`Motor::to_motor8`]. The result is not normalized.
    pub fn from_motor8(c: &[f64; 8]) -> Result<Motor, ConformalError> {
        if !c.iter().all(|x| x.is_finite()) {
            return Err(ConformalError::NonFinite);
        }
        let mut m = Multivector::zero(Signature::CGA);
        for (i, &b) in MOTOR8_MASKS.iter().enumerate() {
            m.set(b, c[i]);
            if i >= 4 {
                m.set(b ^ mask::E45, c[i]);
            }
        }
        Ok(Motor { mv: m, dilated: false })
    }

    /// Rotational part of a rigid motor `T R` (the Euclidean-only blades).
    pub fn rotor_part(&self) -> Rotor {
        let mut r = Multivector::zero(Signature::CGA);
        for b in [0, mask::E12, mask::E13, mask::E23] {
            r.set(b, self.mv.get(b));
        }
        Rotor::from_mv_unchecked(r)
    }

    /// Image of the origin.
    pub fn translation(&self) -> Result<Vec3, ConformalError> {
        self.apply_point(&Vec3::zeros())
    }

    /// Blend used by interpolation: `a (1 − t) + b t` without normalization.
    pub(crate) fn blend(a: &Motor, b: &Motor, t: f64) -> Motor {
        Motor { mv: a.mv * (1.0 - t) + b.mv * t, dilated: a.dilated || b.dilated }
    }

    pub(crate) fn negated(&self) -> Motor {
        Motor { mv: -self.mv, dilated: self.dilated }
    }
}

impl Mul for Motor {
    type Output = Motor;

    /// Composition; `a * b` applies `b` first.
    fn mul(self, rhs: Motor) -> Motor {
        Motor { mv: self.mv * rhs.mv, dilated: self.dilated || rhs.dilated }
    }
}

/// A motor with its inverse and its action on vectors cached.
#[derive(Debug, Clone, Copy)]
pub struct PreparedMotor {
    mv: Multivector,
    inverse: Multivector,
    /// Column `j` is the image of `e_{j+1}`.
    vector_map: [[f64; 5]; 5],
}

impl PreparedMotor {
    fn new(mv: Multivector, inverse: Multivector) -> Self {
        let mut vector_map = [[0.0; 5]; 5];
        for (j, col) in vector_map.iter_mut().enumerate() {
            let image = mv.sandwich_with_inverse(&Multivector::basis_vector(Signature::CGA, j + 1), &inverse);
            for (i, c) in col.iter_mut().enumerate() {
                *c = image.get(1 << i);
            }
        }
        PreparedMotor { mv, inverse, vector_map }
    }

    pub fn transform(&self, x: &Multivector) -> Multivector {
        let c = x.coeffs();
        let is_vector = c.iter().enumerate().all(|(m, &v)| v == 0.0 || m.count_ones() == 1);
        if !is_vector {
            return self.mv.sandwich_with_inverse(x, &self.inverse);
        }
        let mut out = Multivector::zero(Signature::CGA);
        for i in 0..5 {
            let v: f64 = (0..5).map(|j| self.vector_map[j][i] * c[1 << j]).sum();
            out.set(1 << i, v);
        }
        out
    }

    /// Image of `up(x)`, rescaled to unit `e₀` weight.
    pub fn transform_point(&self, x: &Vec3) -> Result<Multivector, ConformalError> {
        self.transform_conformal(up(x)?.mv())
    }

    /// Image of a conformal point, rescaled to unit `e₀` weight.
    pub fn transform_conformal(&self, p: &Multivector) -> Result<Multivector, ConformalError> {
        let p = self.transform(p);
        let w = origin_weight(&p);
        if w.abs() <= 1e-12 {
            return Err(ConformalError::PointAtInfinity { weight: w });
        }
        Ok(p / w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::down;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: &Vec3, b: &Vec3, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn rotor_quarter_turn_about_z() {
        let r = rotor_from_axis_angle(&Vec3::z(), FRAC_PI_2).unwrap();
        let e1 = Multivector::basis_vector(Signature::CGA, 1);
        let e2 = Multivector::basis_vector(Signature::CGA, 2);
        assert!(r.mv().sandwich(&e1).unwrap().approx_eq(&e2, 1e-15));
        assert_eq!(rotor_from_axis_angle(&Vec3::x(), 0.0).unwrap(), Rotor::identity());
        assert!(matches!(rotor_from_axis_angle(&Vec3::zeros(), 1.0), Err(ConformalError::ZeroAxis)));
    }

    #[test]
    fn rotor_angles_add() {
        let axis = Vec3::new(1.0, -2.0, 0.5);
        let a = rotor_from_axis_angle(&axis, 0.4).unwrap();
        let b = rotor_from_axis_angle(&axis, 1.1).unwrap();
        let ab = rotor_from_axis_angle(&axis, 1.5).unwrap();
        assert!((*a.mv() * *b.mv()).approx_eq(ab.mv(), 1e-15));
    }

    #[test]
    fn translator_moves_points() {
        assert_eq!(*translator(&Vec3::zeros()).unwrap().mv(), Multivector::one(Signature::CGA));
        let t = Vec3::new(1.0, -2.0, 0.25);
        let tr = translator(&t).unwrap();
        let moved = tr.mv().sandwich(&e_origin()).unwrap();
        assert!(moved.approx_eq(up(&t).unwrap().mv(), 1e-15));
        let x = Vec3::new(3.0, 0.5, -1.0);
        let image = tr.mv().sandwich(up(&x).unwrap().mv()).unwrap();
        assert!(image.approx_eq(up(&(x + t)).unwrap().mv(), 1e-12));
        let a = Vec3::new(0.5, 0.0, 1.0);
        let ab = *translator(&a).unwrap().mv() * *tr.mv();
        assert_eq!(ab, *translator(&(a + t)).unwrap().mv());
    }

    #[test]
    fn translator_payload_order() {
        let m = translator(&Vec3::new(1.0, 2.0, 3.0)).unwrap().motor();
        assert_eq!(m.to_motor8().unwrap(), [1.0, 0.0, 0.0, 0.0, -0.5, -1.0, -1.5, 0.0]);
        let back = Motor::from_motor8(&m.to_motor8().unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn dilator_scales() {
        assert!(dilator(1.0).unwrap().mv().approx_eq(&Multivector::one(Signature::CGA), 0.0));
        let d = dilator(2.0).unwrap();
        let image = d.mv().sandwich(up(&Vec3::x()).unwrap().mv()).unwrap();
        assert!(close(&down(&image).unwrap(), &Vec3::new(2.0, 0.0, 0.0), 1e-12));
        let ab = *dilator(1.5).unwrap().mv() * *dilator(3.0).unwrap().mv();
        assert!(ab.approx_eq(dilator(4.5).unwrap().mv(), 1e-14));
        assert!(matches!(dilator(0.0), Err(ConformalError::NonPositiveScale(_))));
        assert!(matches!(dilator(-1.0), Err(ConformalError::NonPositiveScale(_))));
    }

    #[test]
    fn compose_translation_after_rotation() {
        let r = rotor_from_axis_angle(&Vec3::new(0.0, 1.0, 1.0), 0.7).unwrap().motor();
        let t = Vec3::new(0.3, 0.2, -1.0);
        let m = motor_compose(&[translator(&t).unwrap().motor(), r]).unwrap();
        let x = Vec3::new(1.0, 2.0, 3.0);
        let expect = r.apply_point(&x).unwrap() + t;
        assert!(close(&m.apply_point(&x).unwrap(), &expect, 1e-12));
        assert_eq!(motor_compose(&[]).unwrap(), Motor::identity());
        assert!(m.rigid_stray() < 1e-15);
        assert!(!m.is_dilated());
    }

    #[test]
    fn normalization_removes_dual_residual() {
        let a = motor_compose(&[
            translator(&Vec3::new(1.0, 0.0, 0.0)).unwrap().motor(),
            rotor_from_axis_angle(&Vec3::z(), 0.3).unwrap().motor(),
        ])
        .unwrap();
        let b = motor_compose(&[
            translator(&Vec3::new(0.0, 2.0, 1.0)).unwrap().motor(),
            rotor_from_axis_angle(&Vec3::x(), 1.2).unwrap().motor(),
        ])
        .unwrap();
        let mid = Motor::blend(&a, &b, 0.5);
        let mut raw = *mid.mv() * mid.mv().reverse();
        raw = raw / raw.scalar_part();
        raw.set(0, 0.0);
        assert!(raw.norm_inf() > 1e-3, "plain scaling would leave a residual");
        let (n, residual) = mid.normalized_with_residual().unwrap();
        assert!(residual < 1e-12);
        let mut nn = *n.mv() * n.mv().reverse();
        nn.set(0, nn.scalar_part() - 1.0);
        assert!(nn.norm_inf() < 1e-12);
        assert!(n.rigid_stray() < 1e-12);
    }

    #[test]
    fn negative_norm_is_degenerate() {
        let zero = Motor { mv: Multivector::zero(Signature::CGA), dilated: false };
        assert!(matches!(zero.normalized(), Err(ConformalError::DegenerateNorm(_))));
    }

    #[test]
    fn from_multivector_rejects_odd() {
        let odd = Multivector::basis_vector(Signature::CGA, 1);
        assert!(matches!(Motor::from_multivector(odd, false), Err(ConformalError::NotEven)));
    }

    #[test]
    fn far_translations_still_apply() {
        let t = Vec3::new(90.0, -80.0, 70.0);
        let m = motor_compose(&[
            translator(&t).unwrap().motor(),
            rotor_from_axis_angle(&Vec3::new(0.3, 0.5, 0.8), 2.0).unwrap().motor(),
        ])
        .unwrap();
        let x = m.apply_point(&Vec3::zeros()).unwrap();
        assert!((x - t).amax() < 1e-9);
    }

    #[test]
    fn prepared_vector_map_matches_sandwich() {
        let m = motor_compose(&[
            translator(&Vec3::new(0.4, -1.2, 2.0)).unwrap().motor(),
            rotor_from_axis_angle(&Vec3::new(1.0, 2.0, -0.5), 1.1).unwrap().motor(),
            dilator(1.7).unwrap().motor(),
        ])
        .unwrap();
        let prepared = m.prepared().unwrap();
        let inverse = m.mv().versor_inverse().unwrap();
        for x in [Vec3::zeros(), Vec3::new(0.3, -0.7, 1.1), Vec3::new(-4.0, 2.5, 9.0)] {
            let p = *up(&x).unwrap().mv();
            assert!(prepared.transform(&p).approx_eq(&m.mv().sandwich_with_inverse(&p, &inverse), 1e-12));
        }
        let bivector = Multivector::basis_vector(Signature::CGA, 1) ^ Multivector::basis_vector(Signature::CGA, 4);
        assert!(prepared.transform(&bivector).approx_eq(&m.mv().sandwich_with_inverse(&bivector, &inverse), 0.0));
    }
}
