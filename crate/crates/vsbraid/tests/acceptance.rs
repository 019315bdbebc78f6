//! The acceptance battery, one test per criterion. Each test prints its
//! pass/fail line; run with `--nocapture` to see them all.

use vsbraid::suite::*;

fn cfg() -> SuiteConfig {
    SuiteConfig::default()
}

fn assert_criterion(r: CriterionResult) {
    println!("{}", r.render());
    assert!(r.passed, "{}", r.render());
}

#[test]
fn criterion_01_triple_classification() {
    assert_criterion(criterion_01(&cfg()));
}

#[test]
fn criterion_02_quotient_classification() {
    assert_criterion(criterion_02(&cfg()));
}

#[test]
fn criterion_03_abelianization() {
    assert_criterion(criterion_03(&cfg()));
}

#[test]
fn criterion_04_class2_quotient() {
    assert_criterion(criterion_04(&cfg()));
}

#[test]
fn criterion_05_kernel_presentations() {
    assert_criterion(criterion_05(&cfg()));
}

#[test]
fn criterion_06_kernel_structures() {
    assert_criterion(criterion_06(&cfg()));
}

#[test]
fn criterion_07_forbidden_relations() {
    assert_criterion(criterion_07(&cfg()));
}

/// The full battery as stated, on three and four strands. The three-strand
/// quotient-target certificates are rejected with a verified separating
/// witness: in the quotient of the three-strand group by the classical
/// braid generators, the singular generator is not central (the commuting
/// relations that would force centrality need at least four strands), so
/// those quotients are not the stated direct products. The rejection is the
/// mathematically correct outcome, and this test records the mismatch with
/// the stated expectation.
#[test]
fn criterion_08_short_exact_sequences() {
    assert_criterion(criterion_08(&cfg()));
}

/// The same battery where the target claims hold (four strands and up).
#[test]
fn criterion_08_holds_from_four_strands() {
    assert_criterion(criterion_08_at(&cfg(), &[4]));
}

#[test]
fn criterion_09_semidirect_decomposition() {
    assert_criterion(criterion_09(&cfg()));
}

#[test]
fn criterion_10_exponent_invariance() {
    assert_criterion(criterion_10(&cfg()));
}

#[test]
fn criterion_11_outer_automorphism_composites() {
    assert_criterion(criterion_11(&cfg()));
}

#[test]
fn criterion_12_trivial_center() {
    assert_criterion(criterion_12(&cfg()));
}

/// Identical seeds produce identical suite output.
#[test]
fn suite_is_deterministic() {
    let cfg = SuiteConfig { seed: 7, samples: 500, search_budget: 20_000 };
    let a: Vec<String> = run_all(&cfg).iter().map(|r| r.render()).collect();
    let b: Vec<String> = run_all(&cfg).iter().map(|r| r.render()).collect();
    assert_eq!(a, b);
}
