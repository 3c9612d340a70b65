//! Brute-force reference for blade products.
//!
//! Works on explicit factor lists instead of bitmasks: concatenate the two
//! factor lists, bubble-sort them counting transpositions, then contract
//! adjacent equal factors using the metric. Kept deliberately naive so the
//! table built in [`super::ProductTable`] has something independent to be
//! checked against.

use super::{ProductTable, Signature};

fn factors(mask: usize) -> Vec<usize> {
    (0..8).filter(|i| mask & (1 << i) != 0).collect()
}

/// Product of blades `a` and `b` as `(mask, sign)`, by explicit reordering.
pub fn blade_product(a: usize, b: usize, sig: Signature) -> (usize, i8) {
    let mut word = factors(a);
    word.extend(factors(b));
    let mut sign = 1i8;
    // bubble sort, one sign flip per adjacent swap
    let n = word.len();
    for pass in 0..n {
        for i in 0..n.saturating_sub(1 + pass) {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < word.len() {
        if i + 1 < word.len() && word[i] == word[i + 1] {
            sign *= sig.metric(word[i]);
            i += 2;
        } else {
            out.push(word[i]);
            i += 1;
        }
    }
    (out.iter().map(|f| 1usize << f).sum(), sign)
}

/// Cells of `table` that disagree with the brute-force oracle.
pub fn table_mismatches(table: &ProductTable) -> Vec<(usize, usize)> {
    let sig = table.signature();
    table
        .iter()
        .filter(|&(a, b, e)| blade_product(a, b, sig) != (e.mask as usize, e.sign))
        .map(|(a, b, _)| (a, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_checked_products() {
        let cga = Signature::CGA;
        // e1 e2 e1 = -e2
        assert_eq!(blade_product(0b11, 0b1, cga), (0b10, -1));
        // e5 e5 = -1
        assert_eq!(blade_product(0b10000, 0b10000, cga), (0, -1));
        // e123 e123 = -1 in Euclidean space
        assert_eq!(blade_product(0b111, 0b111, Signature::EGA), (0, -1));
    }

    #[test]
    fn generated_tables_match() {
        for sig in [Signature::EGA, Signature::CGA, Signature::new(1, 3).unwrap()] {
            let table = ProductTable::build(sig);
            assert!(table_mismatches(&table).is_empty(), "{sig}");
        }
    }
}
