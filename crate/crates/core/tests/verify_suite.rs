use wreath_core::decomp::{DecompositionMatrix, GLabel};
use wreath_core::oracle::{base_group, OracleContext};
use wreath_core::verify::{run_suite, Status};
use wreath_core::{Error, MultiPartition};

#[test]
fn suites_pass_on_small_groups() {
    for (p, w) in [(3, 0), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1)] {
        let report = run_suite(p, w);
        assert!(report.all_passed(), "p={p} w={w}: {:#?}", report.claims);
    }
}

#[test]
fn every_supported_prime_builds() {
    for p in [3, 5, 7, 11, 13, 17] {
        let model = base_group(p).unwrap();
        assert_eq!(model.g.characters().len(), p);
    }
}

#[test]
fn oracle_matrix_matches_formula_matrix() {
    let ctx = OracleContext::new(3, 2).unwrap();
    let m = DecompositionMatrix::build(3, 2).unwrap();
    for (c, gamma) in m.cols.iter().enumerate() {
        let oracle = ctx.oracle_restriction(gamma).unwrap();
        for (r, alpha) in m.rows.iter().enumerate() {
            assert_eq!(oracle.get(alpha).copied().unwrap_or(0), m.get(r, c));
        }
    }
}

#[test]
fn labels_round_trip_through_text() {
    for gamma in GLabel::all(5, 2).unwrap() {
        let text = gamma.to_string();
        let parsed: MultiPartition = text.parse().unwrap();
        assert_eq!(&parsed, gamma.label());
    }
}

#[test]
fn guard_is_enforced() {
    match OracleContext::with_guard(5, 3, 10_000) {
        Err(Error::GuardExceeded { order, guard }) => {
            assert_eq!(order, 48_000);
            assert_eq!(guard, 10_000);
        }
        other => panic!("expected a guard error, got {:?}", other.err()),
    }
    let report = run_suite(3, 6);
    assert!(report.claims.iter().any(|c| c.status == Status::Skipped));
}
