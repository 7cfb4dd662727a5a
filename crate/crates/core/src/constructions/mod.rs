//! Equal-level constructions: multiplication-table NDMs, Rao–Hamming and
//! nested Rao–Hamming arrays, Kronecker NOAs, and zero-sum NOAs.

mod ndm;
mod noa;
mod search;

pub use ndm::{
    mult_table, ndm_p3, ndm_sec34, ndm_sec34_over, ndm_theorem1, ndm_theorem2, ndm_theorem3,
    ndm_theorem3_over, r2_field, table_block, P3Instance, Sec34Variant,
};
pub use noa::{
    noa_theorem4, noa_theorem5, qtw_noa, rao_hamming_oa, validation_pair, zero_sum_noa, ValidationPair,
};
pub use search::{search_common_rows, search_nested_rows};

use crate::algebra::{Elem, FieldSpec};

/// Elements of degree at most `m` in index order; `m = -1` gives `[0]`.
pub fn label_sequence(f: &FieldSpec, m: i32) -> Vec<Elem> {
    if m < 0 {
        return vec![Elem(0)];
    }
    let len = (f.p() as u64).pow((m + 1) as u32).min(f.order() as u64) as u32;
    (0..len).map(Elem).collect()
}

/// The monomial x^k.
pub fn monomial(f: &FieldSpec, k: u32) -> Elem {
    Elem(f.p().pow(k))
}

/// `offset + seq`, elementwise.
pub fn shifted(f: &FieldSpec, offset: Elem, seq: &[Elem]) -> Vec<Elem> {
    seq.iter().map(|&e| f.add_unchecked(offset, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_sequences() {
        let f = FieldSpec::of_order(8).unwrap();
        assert_eq!(label_sequence(&f, -1), vec![Elem(0)]);
        let r1: Vec<String> = label_sequence(&f, 1).iter().map(|&e| f.format(e)).collect();
        assert_eq!(r1, ["0", "1", "x", "x+1"]);
        let g = FieldSpec::of_order(27).unwrap();
        assert_eq!(label_sequence(&g, 1).len(), 9);
        assert_eq!(g.format(monomial(&g, 2)), "x^2");
    }
}
