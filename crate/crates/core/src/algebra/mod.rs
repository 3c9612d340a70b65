//! Dense multivector arithmetic for small Clifford algebras.
//!
//! Every algebra here is `Cl(p, q)` with `p + q <= 5`: the first `p` basis
//! vectors square to `+1`, the remaining `q` square to `-1`. Blades are
//! addressed by bitmask (bit `i` set means `e{i+1}` is a factor) and the
//! geometric product is driven by a precomputed [`ProductTable`].
//!
//! The two algebras the rest of the crate uses are [`Signature::EGA`]
//! (`Cl(3,0)`, 8 blades) and [`Signature::CGA`] (`Cl(4,1)`, 32 blades).

mod blade;
mod multivector;
pub mod oracle;
mod signature;
mod table;

pub use blade::{blade_product, BladeIndex};
pub use multivector::Multivector;
pub use signature::Signature;
pub use table::{ProductEntry, ProductTable};

use thiserror::Error;

/// Largest supported dimension; 2^5 = 32 coefficients.
pub const MAX_DIM: usize = 5;
/// Coefficient storage length shared by every signature.
pub const MAX_BLADES: usize = 1 << MAX_DIM;

/// Largest relative non-scalar part of `V * reverse(V)` accepted for a versor.
pub const VERSOR_TOLERANCE: f64 = 1e-9;
/// Smallest `|scalar(V * reverse(V))|` accepted for a versor.
pub const VERSOR_MIN_NORM: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("unsupported signature Cl({p},{q}): p + q must be at most {MAX_DIM}")]
    UnsupportedSignature { p: u8, q: u8 },
    #[error("blade mask {mask:#b} out of range for {signature}")]
    BladeOutOfRange { mask: usize, signature: Signature },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("non-finite coefficient at blade {mask:#b}")]
    NonFinite { mask: usize },
    #[error("not a versor: non-scalar residual {residual:e}, scalar norm {norm:e}")]
    NotAVersor { residual: f64, norm: f64 },
}
