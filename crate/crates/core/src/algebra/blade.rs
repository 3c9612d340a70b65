use std::fmt;

use super::{AlgebraError, Signature};

/// A basis blade, identified by the set of basis vectors it contains.
///
/// Bit `i` of the mask is set when `e{i+1}` is a factor. Factors are always
/// taken in ascending index order, so `e13` is `e1 e3` and `e31 = -e13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(u8);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    pub fn new(mask: usize, sig: Signature) -> Result<Self, AlgebraError> {
        if mask >= sig.blade_count() {
            return Err(AlgebraError::BladeOutOfRange { mask, signature: sig });
        }
        Ok(BladeIndex(mask as u8))
    }

    /// Blade from 1-based basis vector indices, e.g. `&[1, 2]` for `e12`.
    /// Returns the canonical blade and the sign picked up by sorting.
    pub fn from_factors(factors: &[usize], sig: Signature) -> Result<(Self, i8), AlgebraError> {
        let mut acc = BladeIndex::SCALAR;
        let mut sign = 1i8;
        for &f in factors {
            if f == 0 || f > sig.dim() {
                return Err(AlgebraError::BladeOutOfRange { mask: 1usize << f.min(7), signature: sig });
            }
            let (next, s) = blade_product(acc, BladeIndex(1 << (f - 1)), sig);
            acc = next;
            sign *= s;
        }
        Ok((acc, sign))
    }

    pub fn mask(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        for i in 0..8 {
            if self.0 & (1 << i) != 0 {
                write!(f, "{}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// Geometric product of two basis blades: `a * b = sign * result`.
///
/// The result mask is `a ^ b`. The sign collects one factor of `-1` for every
/// transposition needed to bring the concatenated factors into ascending
/// order, times the metric square of every basis vector shared by both.
pub fn blade_product(a: BladeIndex, b: BladeIndex, sig: Signature) -> (BladeIndex, i8) {
    let (am, bm) = (a.0 as u32, b.0 as u32);
    // Each factor of `a` must pass every lower-indexed factor of `b`.
    let mut swaps = 0u32;
    let mut rest = am >> 1;
    while rest != 0 {
        swaps += (rest & bm).count_ones();
        rest >>= 1;
    }
    let mut sign: i8 = if swaps.is_multiple_of(2) { 1 } else { -1 };
    let shared = am & bm;
    for i in 0..sig.dim() {
        if shared & (1 << i) != 0 {
            sign *= sig.metric(i);
        }
    }
    (BladeIndex((am ^ bm) as u8), sign)
}
