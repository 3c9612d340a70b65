use std::fmt;
use std::ops::{Add, AddAssign, BitOr, BitXor, Div, Index, Mul, Neg, Sub};

use super::{
    AlgebraError, BladeIndex, ProductTable, Signature, MAX_BLADES, VERSOR_MIN_NORM,
    VERSOR_TOLERANCE,
};

/// A general element of `Cl(p, q)`, stored densely by blade mask.
///
/// Storage is a fixed 32-slot array so values are `Copy`; only the first
/// `signature.blade_count()` slots are meaningful and the rest stay zero.
/// [`Multivector::coeffs`] exposes exactly `2^(p+q)` entries.
///
/// The arithmetic operators (`*` geometric, `^` outer, `|` left contraction)
/// panic on signature mismatch; the named methods return `Result` instead.
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    sig: Signature,
    c: [f64; MAX_BLADES],
}

#[derive(Clone, Copy)]
enum Product {
    Geometric,
    Outer,
    LeftContraction,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, c: [0.0; MAX_BLADES] }
    }

    pub fn scalar(sig: Signature, s: f64) -> Self {
        let mut m = Self::zero(sig);
        m.c[0] = s;
        m
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, 1.0)
    }

    /// `coeff * blade`.
    pub fn blade(sig: Signature, blade: BladeIndex, coeff: f64) -> Self {
        let mut m = Self::zero(sig);
        m.c[blade.mask()] = coeff;
        m
    }

    /// Basis vector `e{index}`, 1-based.
    pub fn basis_vector(sig: Signature, index: usize) -> Self {
        assert!(index >= 1 && index <= sig.dim(), "basis vector e{index} not in {sig}");
        let mut m = Self::zero(sig);
        m.c[1 << (index - 1)] = 1.0;
        m
    }

    /// Grade-1 element from components along `e1..e{n}`.
    pub fn vector(sig: Signature, components: &[f64]) -> Result<Self, AlgebraError> {
        if components.len() != sig.dim() {
            return Err(AlgebraError::CoefficientCount { expected: sig.dim(), got: components.len() });
        }
        let mut m = Self::zero(sig);
        for (i, &x) in components.iter().enumerate() {
            if !x.is_finite() {
                return Err(AlgebraError::NonFinite { mask: 1 << i });
            }
            m.c[1 << i] = x;
        }
        Ok(m)
    }

    pub fn from_coeffs(sig: Signature, coeffs: &[f64]) -> Result<Self, AlgebraError> {
        let n = sig.blade_count();
        if coeffs.len() != n {
            return Err(AlgebraError::CoefficientCount { expected: n, got: coeffs.len() });
        }
        if let Some(mask) = coeffs.iter().position(|x| !x.is_finite()) {
            return Err(AlgebraError::NonFinite { mask });
        }
        let mut m = Self::zero(sig);
        m.c[..n].copy_from_slice(coeffs);
        Ok(m)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..self.sig.blade_count()]
    }

    pub fn get(&self, mask: usize) -> f64 {
        self.coeffs()[mask]
    }

    pub fn set(&mut self, mask: usize, value: f64) {
        let n = self.sig.blade_count();
        assert!(mask < n, "blade mask {mask:#b} out of range for {}", self.sig);
        self.c[mask] = value;
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|x| x.is_finite())
    }

    pub fn scalar_part(&self) -> f64 {
        self.c[0]
    }

    /// Largest absolute coefficient.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Masks with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs().iter().enumerate().filter(|(_, x)| **x != 0.0).map(|(i, _)| i)
    }

    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        self.sig == other.sig && self.max_abs_diff(other) <= tol
    }

    fn check(&self, other: &Multivector) -> Result<(), AlgebraError> {
        if self.sig != other.sig {
            return Err(AlgebraError::SignatureMismatch { left: self.sig, right: other.sig });
        }
        Ok(())
    }

    fn product(&self, other: &Multivector, kind: Product) -> Multivector {
        let table = ProductTable::get(self.sig);
        let n = self.sig.blade_count();
        let mut out = [0.0; MAX_BLADES];
        for a in 0..n {
            let x = self.c[a];
            if x == 0.0 {
                continue;
            }
            for b in 0..n {
                let y = other.c[b];
                if y == 0.0 {
                    continue;
                }
                let keep = match kind {
                    Product::Geometric => true,
                    Product::Outer => a & b == 0,
                    Product::LeftContraction => a & !b == 0,
                };
                if !keep {
                    continue;
                }
                let e = table.entry(a, b);
                out[e.mask as usize] += f64::from(e.sign) * x * y;
            }
        }
        Multivector { sig: self.sig, c: out }
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        self.check(other)?;
        Ok(self.product(other, Product::Geometric))
    }

    pub fn outer_product(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        self.check(other)?;
        Ok(self.product(other, Product::Outer))
    }

    /// Left contraction `self ⌋ other`. On two vectors this is the metric dot product.
    pub fn inner_product(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        self.check(other)?;
        Ok(self.product(other, Product::LeftContraction))
    }

    fn map_grades(&self, f: impl Fn(u32) -> f64) -> Multivector {
        let mut out = *self;
        for (mask, x) in out.c[..self.sig.blade_count()].iter_mut().enumerate() {
            *x *= f((mask as u32).count_ones());
        }
        out
    }

    /// Reversion: grade `k` scaled by `(-1)^(k(k-1)/2)`.
    pub fn reverse(&self) -> Multivector {
        self.map_grades(|k| if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Grade involution: grade `k` scaled by `(-1)^k`.
    pub fn involute(&self) -> Multivector {
        self.map_grades(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
    }

    pub fn grade_projection(&self, k: u32) -> Multivector {
        self.map_grades(|g| if g == k { 1.0 } else { 0.0 })
    }

    pub fn even_part(&self) -> Multivector {
        self.map_grades(|g| if g % 2 == 0 { 1.0 } else { 0.0 })
    }

    /// Scalar part of `self * reverse(self)` after checking the product is
    /// scalar within [`VERSOR_TOLERANCE`] relative to `max(‖V Ṽ‖, ‖V‖²)`.
    pub fn versor_norm_squared(&self) -> Result<f64, AlgebraError> {
        let vv = self.product(&self.reverse(), Product::Geometric);
        let s = vv.scalar_part();
        let mut rest = vv;
        rest.c[0] = 0.0;
        let residual = rest.norm_inf();
        // rounding in the product grows with the operand, not the result
        let scale = vv.norm_inf().max(self.norm_inf().powi(2));
        if s.abs() < VERSOR_MIN_NORM || residual > VERSOR_TOLERANCE * scale {
            return Err(AlgebraError::NotAVersor { residual, norm: s });
        }
        Ok(s)
    }

    /// `reverse(V) / scalar(V * reverse(V))`.
    pub fn versor_inverse(&self) -> Result<Multivector, AlgebraError> {
        let s = self.versor_norm_squared()?;
        Ok(self.reverse() * (1.0 / s))
    }

    /// `V * X * V^-1`.
    pub fn sandwich(&self, x: &Multivector) -> Result<Multivector, AlgebraError> {
        self.check(x)?;
        let inv = self.versor_inverse()?;
        Ok(self.product(x, Product::Geometric).product(&inv, Product::Geometric))
    }

    /// Sandwich with a precomputed inverse; skips the versor check.
    pub fn sandwich_with_inverse(&self, x: &Multivector, inverse: &Multivector) -> Multivector {
        assert_eq!(self.sig, x.sig, "signature mismatch");
        self.product(x, Product::Geometric).product(inverse, Product::Geometric)
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[{}](", self.sig)?;
        let mut first = true;
        for mask in self.support() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*{}", self.c[mask], BladeIndex::new(mask, self.sig).expect("in range"))?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

impl Index<usize> for Multivector {
    type Output = f64;

    fn index(&self, mask: usize) -> &f64 {
        &self.coeffs()[mask]
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(self, rhs: Multivector) -> Multivector {
        self + (-rhs)
    }
}

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;

    fn mul(mut self, rhs: f64) -> Multivector {
        for x in self.c.iter_mut() {
            *x *= rhs;
        }
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

impl Div<f64> for Multivector {
    type Output = Multivector;

    fn div(self, rhs: f64) -> Multivector {
        self * (1.0 / rhs)
    }
}

impl Mul for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs).expect("geometric product")
    }
}

impl BitXor for Multivector {
    type Output = Multivector;

    fn bitxor(self, rhs: Multivector) -> Multivector {
        self.outer_product(&rhs).expect("outer product")
    }
}

impl BitOr for Multivector {
    type Output = Multivector;

    fn bitor(self, rhs: Multivector) -> Multivector {
        self.inner_product(&rhs).expect("inner product")
    }
}
