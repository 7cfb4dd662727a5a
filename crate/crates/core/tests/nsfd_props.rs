mod common;

use nestfill::io::{design_csv, read_design_csv};
use nestfill::nsfd::{bivariate_checks, nested_design, relabel, Jitter, Ranking};
use proptest::prelude::*;

#[test]
fn row_order_pipelines() {
    common::nsfd_suite().unwrap();
}

#[test]
fn design_files_round_trip() {
    let d = nested_design(&common::example8(), Ranking::RowOrder, Jitter::Uniform(11)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("low.csv");
    std::fs::write(&path, design_csv(&d.low).unwrap()).unwrap();
    let back = read_design_csv(&path).unwrap();
    assert_eq!(back.cells(), d.low.cells());
    for i in 0..back.rows() {
        for j in 0..back.cols() {
            assert!((back.get(i, j) - d.low.get(i, j)).abs() < 1e-11);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn seeded_ranking_keeps_strata(rank in any::<u64>(), jitter in any::<u64>()) {
        let p = common::example8();
        let r = relabel(&p).unwrap();
        let d = nested_design(&p, Ranking::Seeded(rank), Jitter::Uniform(jitter)).unwrap();
        let n = d.low.rows();
        prop_assert!(d.low.cells().iter().all(|&c| c < n));
        prop_assert!(bivariate_checks(&d.low, r.levels()).unwrap().iter().all(|c| c.uniform));
        prop_assert!(bivariate_checks(&d.high, &r.child_levels()).unwrap().iter().all(|c| c.uniform));
        for i in 0..n {
            for j in 0..d.low.cols() {
                let x = d.low.get(i, j);
                prop_assert!((0.0..1.0).contains(&x));
            }
        }
    }
}
