use std::sync::OnceLock;

use super::{blade_product, BladeIndex, Signature, MAX_DIM};

/// One Cayley-table cell: `blade(a) * blade(b) = sign * blade(mask)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductEntry {
    pub mask: u8,
    pub sign: i8,
}

/// Full blade-by-blade geometric product table for one signature.
#[derive(Debug, Clone)]
pub struct ProductTable {
    signature: Signature,
    entries: Vec<ProductEntry>,
}

static TABLES: [OnceLock<ProductTable>; (MAX_DIM + 1) * (MAX_DIM + 1)] =
    [const { OnceLock::new() }; (MAX_DIM + 1) * (MAX_DIM + 1)];

impl ProductTable {
    pub fn build(signature: Signature) -> Self {
        let n = signature.blade_count();
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (r, sign) = blade_product(
                    BladeIndex::new(a, signature).expect("mask in range"),
                    BladeIndex::new(b, signature).expect("mask in range"),
                    signature,
                );
                entries.push(ProductEntry { mask: r.mask() as u8, sign });
            }
        }
        ProductTable { signature, entries }
    }

    /// Shared, lazily built table for `signature`.
    pub fn get(signature: Signature) -> &'static ProductTable {
        let slot = signature.p() as usize * (MAX_DIM + 1) + signature.q() as usize;
        TABLES[slot].get_or_init(|| ProductTable::build(signature))
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entry(&self, a: usize, b: usize) -> ProductEntry {
        self.entries[a * self.signature.blade_count() + b]
    }

    /// Row-major iterator over `(maskA, maskB, entry)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, ProductEntry)> + '_ {
        let n = self.signature.blade_count();
        self.entries.iter().enumerate().map(move |(i, e)| (i / n, i % n, *e))
    }

    /// Overwrite one cell. Only used by the CLI fault-injection self-test.
    pub fn set_entry(&mut self, a: usize, b: usize, entry: ProductEntry) {
        let n = self.signature.blade_count();
        self.entries[a * n + b] = entry;
    }
}
