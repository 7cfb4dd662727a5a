use nestfill::catalog::{self, CATALOG_ENV};

#[test]
fn override_directory_replaces_and_checks_entries() {
    let dir = tempfile::tempdir().unwrap();
    let good = "# name: ex2_d2\n# description: replaced\n# group: GF(2)\n# check: dm\n0 0\n1 0\n";
    std::fs::write(dir.path().join("ex2_d2.txt"), good).unwrap();
    let bad = "# name: ex2_d0\n# description: broken\n# group: GF(4)\n# check: dm\n0 0\n0 0\n0 0\n0 0\n";
    std::fs::write(dir.path().join("ex2_d0.txt"), bad).unwrap();
    std::env::set_var(CATALOG_ENV, dir.path());

    let e = catalog::get("ex2_d2").unwrap();
    assert_eq!(e.description, "replaced");
    assert_eq!(e.array().to_text(), vec![vec!["0", "0"], vec!["1", "0"]]);
    assert!(catalog::get("ex2_d0").is_err());
    assert!(catalog::get("ex3_d1").is_ok());

    std::env::remove_var(CATALOG_ENV);
    assert_ne!(catalog::get("ex2_d2").unwrap().description, "replaced");
}
