// SPDX-License-Identifier: Apache-2.0
use tdc_core::verify::{run_all, run_suite, twist_matrix, SUITES};
use tdc_core::Error;

#[test]
fn all_suites_pass_and_render_deterministically() {
    let a = run_all(7, 20).unwrap();
    assert_eq!(a.len(), SUITES.len());
    for r in &a {
        assert!(r.passed(), "{}", r.render());
        assert!(!r.checks.is_empty());
    }
    let b = run_all(7, 20).unwrap();
    let ra: Vec<String> = a.iter().map(|r| r.render()).collect();
    let rb: Vec<String> = b.iter().map(|r| r.render()).collect();
    assert_eq!(ra, rb);
}

#[test]
fn seed_changes_the_sample() {
    let a = run_suite("duality", 7, 20).unwrap().render();
    let b = run_suite("duality", 8, 20).unwrap().render();
    assert_ne!(a, b);
    assert!(run_suite("duality", 8, 20).unwrap().passed());
}

#[test]
fn matrix_and_unknown_suite() {
    // 8 untwisted models plus three multiples on S³ and T³
    assert_eq!(twist_matrix().unwrap().len(), 14);
    assert!(matches!(run_suite("everything", 7, 20), Err(Error::Unknown(_))));
}

#[test]
fn twisted_report_has_degree_rows() {
    let r = run_suite("twisted", 7, 20).unwrap().render();
    assert!(r.contains("n | rank Z | rank B | betti"));
    assert!(r.contains("    12 | 3 | 0 | 3 | 3 | 3"), "{r}");
}

#[test]
fn small_truncation_reports_failures_instead_of_panicking() {
    // degree 12 needs coefficients past degree 4
    let r = run_suite("twisted", 7, 4).unwrap();
    assert!(!r.passed());
    assert!(r.render().contains("FAIL"));
}
