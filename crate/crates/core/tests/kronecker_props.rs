mod common;

use nestfill::arrays::{check_oa, kronecker_add, LevelArray};
use nestfill::catalog;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn twenty_random_pairs() {
    common::kronecker_suite().unwrap();
}

#[test]
fn a_non_difference_matrix_breaks_the_product() {
    let a = common::trivial_oa(catalog::array("d_12_6_6").unwrap().alphabet(0));
    let d = catalog::array("d_12_6_6").unwrap();
    let mut rows: Vec<Vec<String>> = d.to_text();
    rows[1][1] = rows[2][1].clone();
    let bad = LevelArray::from_text(d.alphabets().to_vec(), &rows).unwrap();
    assert!(!check_oa(&kronecker_add(&a, &bad).unwrap()).is_pass());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn products_of_scrambled_pairs(seed in any::<u64>(), which in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, d, p) = common::random_pair(&mut rng, which);
        prop_assert!(common::kronecker_pair(&a, &d, &p).is_ok());
    }
}
