mod common;

use nestfill::arrays::{check_nested, NestMode};
use nestfill::constructions::{ndm_theorem1, zero_sum_noa};

#[test]
fn difference_matrix_instances_certify() {
    common::ndm_instances().unwrap();
}

#[test]
fn orthogonal_array_instances_certify() {
    common::noa_instances().unwrap();
}

#[test]
fn certificates_reject_a_swapped_child() {
    let p = ndm_theorem1(3).unwrap();
    let mut rows = p.child_rows().to_vec();
    let outside = (0..p.parent().rows()).find(|r| !rows.contains(r)).unwrap();
    rows[0] = outside;
    let broken = nestfill::arrays::NestedPair::new(p.parent().clone(), rows, p.projections().to_vec()).unwrap();
    assert!(!check_nested(&broken, NestMode::Dm).unwrap().is_pass());
}

#[test]
fn zero_sum_requires_a_divisor() {
    assert!(zero_sum_noa(6, 4).is_err());
}
