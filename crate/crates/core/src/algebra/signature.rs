use std::fmt;

use super::{AlgebraError, MAX_DIM};

/// Metric signature of a non-degenerate Clifford algebra `Cl(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    /// 3D Euclidean algebra, 8 blades.
    pub const EGA: Signature = Signature { p: 3, q: 0 };
    /// Conformal model of 3D space, 32 blades. `e4` squares to `+1`, `e5` to `-1`.
    pub const CGA: Signature = Signature { p: 4, q: 1 };

    pub fn new(p: u8, q: u8) -> Result<Self, AlgebraError> {
        if (p as usize) + (q as usize) > MAX_DIM {
            return Err(AlgebraError::UnsupportedSignature { p, q });
        }
        Ok(Signature { p, q })
    }

    pub fn p(self) -> u8 {
        self.p
    }

    pub fn q(self) -> u8 {
        self.q
    }

    /// Number of basis vectors.
    pub fn dim(self) -> usize {
        (self.p + self.q) as usize
    }

    /// Number of blades, `2^(p+q)`.
    pub fn blade_count(self) -> usize {
        1 << self.dim()
    }

    /// Square of basis vector with zero-based index `i`.
    pub fn metric(self, i: usize) -> i8 {
        debug_assert!(i < self.dim());
        if i < self.p as usize {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}
