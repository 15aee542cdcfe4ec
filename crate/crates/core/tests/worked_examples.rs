use orenorm::golden;
use orenorm::verify::{degree_five_example, run_suite, Suite};

#[test]
fn module_examples_pass() {
    for check in [
        golden::galois_fields(),
        golden::function_field(),
        golden::skew_ring(),
        golden::central_structure(),
        golden::norm_engine(),
        golden::factor_engine(),
        golden::cyclic_algebra(),
        golden::oracle(),
    ] {
        let check = check.unwrap();
        assert!(check.ok(), "{check}");
    }
}

/// Over F_9 every t + a with a != 0 has central factor x + 1 or x + 2, so
/// no cubic has three distinct ones.
#[test]
fn f9_has_only_two_linear_central_factors() {
    assert!(!golden::f9_distinct_cubic().unwrap().ok());
}

#[test]
fn degree_five_determinant_matches_the_negated_closed_form() {
    let checks = degree_five_example().unwrap();
    assert!(checks[0].ok(), "{}", checks[0]);
    assert!(!checks[1].ok(), "{}", checks[1]);
    assert!(checks[2].ok(), "{}", checks[2]);
}

#[test]
fn small_suites_are_deterministic() {
    let a = run_suite(Suite::SigmaTerms, 9, Some(10)).unwrap();
    let b = run_suite(Suite::SigmaTerms, 9, Some(10)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.pass());
}
