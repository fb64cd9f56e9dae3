mod common;

use common::*;
use proptest::prelude::*;

fn run(check: Check) -> Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn adjoint_composition(p in simple_polytope(), s in 0i64..4, t in 0i64..=4) {
        run(check_adjoint_composition(&p, (s, 4), (t, 4)))?;
    }

    #[test]
    fn nef_threshold_two_ways(p in simple_polytope()) {
        run(check_nef_threshold(&p))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn cayley_round_trip((bases, w) in cayley_instance()) {
        run(check_cayley_round_trip(&bases, &w))?;
    }

    #[test]
    fn fibration_over_a_line((s, b) in lemma_instance()) {
        run(check_lemma(s, &b))?;
    }

    #[test]
    fn flip_keeps_support(points in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..40)) {
        run(check_flip(&points))?;
    }
}

#[test]
fn principal_divisors_are_trivial_on_the_corpus() {
    for fan in corpus_fans() {
        check_principal_divisors(&fan).unwrap();
    }
}
