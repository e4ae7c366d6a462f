//! End-to-end harness runs at reduced case counts: every suite must come
//! back green, and identical configurations must produce identical
//! report bytes.

use polycalc_core::harness::{laws_run, CaseCounts, HarnessConfig};

fn small_config() -> HarnessConfig {
    HarnessConfig {
        cases: CaseCounts {
            functor_oracle: 20,
            monoidal_triples: 10,
            pentagon: 4,
            duoidal_quads: 8,
            comonoid_categories: 10,
            typed_pairs: 6,
            yoneda_instances: 3,
        },
        ..HarnessConfig::default()
    }
}

#[test]
fn all_suites_pass_at_reduced_counts() {
    let run = laws_run(&small_config());
    let failures: Vec<_> = run
        .records
        .iter()
        .filter(|r| r.status == polycalc_core::harness::Status::Fail)
        .collect();
    assert!(
        failures.is_empty(),
        "failing cases: {:#?}",
        failures
            .iter()
            .map(|r| format!("{}/{}: {:?}", r.suite, r.case, r.witness))
            .collect::<Vec<_>>()
    );
}

#[test]
fn reports_are_deterministic() {
    let cfg = small_config();
    let a = laws_run(&cfg).to_report();
    let b = laws_run(&cfg).to_report();
    assert_eq!(a, b);
}

#[test]
fn suite_subsets_reproduce_full_run_records() {
    let mut cfg = small_config();
    cfg.suites = vec!["closure".into()];
    let solo = laws_run(&cfg);
    let full = laws_run(&small_config());
    let solo_lines: Vec<String> = solo.records.iter().map(|r| format!("{}/{}", r.suite, r.case)).collect();
    let full_lines: Vec<String> = full
        .records
        .iter()
        .filter(|r| r.suite == "closure")
        .map(|r| format!("{}/{}", r.suite, r.case))
        .collect();
    assert_eq!(solo_lines, full_lines);
}
