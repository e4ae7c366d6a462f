//! Acceptance suite: runs every verification criterion at its pinned
//! count and tolerance (all checks are exact: the arithmetic is finite
//! counting) and prints one pass/fail line per criterion.

use polycalc_core::harness::{laws_run, HarnessConfig, LawRun, Status};

fn fails(run: &LawRun, suite: &str, prefix: &str) -> usize {
    run.records
        .iter()
        .filter(|r| r.suite == suite && r.case.starts_with(prefix) && r.status == Status::Fail)
        .count()
}

fn passes(run: &LawRun, suite: &str, prefix: &str) -> usize {
    run.pass_count(suite, prefix)
}

fn case_passed(run: &LawRun, suite: &str, case: &str) -> bool {
    run.records
        .iter()
        .any(|r| r.suite == suite && r.case == case && r.status == Status::Pass)
}

#[test]
fn acceptance_criteria() {
    // Seed 0, corpus bounds 3 positions / 3 directions, default counts:
    // 200 functor-oracle pairs, 100 monoidal triples, 50 duoidal
    // quadruples, 50 comonoid categories, 30 typed pairs, 10 migration
    // instances. Two consecutive full runs feed the determinism check.
    let cfg = HarnessConfig::default();
    let run = laws_run(&cfg);
    let run2 = laws_run(&cfg);

    let mut results: Vec<(usize, &str, bool, String)> = Vec::new();
    let mut push = |n: usize, name: &'static str, ok: bool, detail: String| {
        results.push((n, name, ok, detail));
    };

    // 1. Functor oracle: ≥ 200 verified pairs, zero failures, with the
    // canonical bijection checked at |X| ∈ {0,1,2,3}.
    let got = passes(&run, "monoidal", "functor-oracle/");
    push(
        1,
        "functor oracle",
        got >= 200 && fails(&run, "monoidal", "functor-oracle") == 0,
        format!("{got} verified pairs"),
    );

    // 2. Monoidal laws: unitors/associator for composition and
    // braiding/hexagon for the tensor on ≥ 100 triples, plus pentagon
    // and triangle composites.
    let triples = passes(&run, "monoidal", "monoidal-laws/");
    let pentagon = passes(&run, "monoidal", "pentagon/");
    push(
        2,
        "monoidal laws",
        triples >= 100
            && pentagon >= 25
            && fails(&run, "monoidal", "monoidal-laws") == 0
            && fails(&run, "monoidal", "pentagon") == 0,
        format!("{triples} triples, {pentagon} pentagon quadruples"),
    );

    // 3. Closure adjunction: full hom-set round trips and triangle
    // identities over every triple from the fixed six-polynomial pool.
    let adj = passes(&run, "closure", "adjunction/");
    push(
        3,
        "closure adjunction",
        adj == 216 && fails(&run, "closure", "") == 0,
        format!("{adj}/216 pool triples"),
    );

    // 4. Coclosure adjunctions: right coclosure and indexed left
    // coclosure round trips on the same pool, partitioned over indices.
    let co = passes(&run, "coclosure", "adjunction/");
    push(
        4,
        "coclosure adjunctions",
        co == 216 && fails(&run, "coclosure", "") == 0,
        format!("{co}/216 pool triples"),
    );

    // 5. Duoidal interchange: cartesian classification and naturality on
    // ≥ 50 quadruples.
    let quads = passes(&run, "duoidal", "interchange/");
    push(
        5,
        "duoidal interchange",
        quads >= 50 && fails(&run, "duoidal", "") == 0,
        format!("{quads} quadruples"),
    );

    // 6. Comonoid ↔ category: round-trip identity on ≥ 50 categories and
    // the exhaustive law-equivalence over candidate structures on the
    // walking-arrow carrier.
    let rt = passes(&run, "comonoid", "roundtrip/");
    push(
        6,
        "comonoid-category equivalence",
        rt >= 50
            && case_passed(&run, "comonoid", "law-equivalence/walking-arrow")
            && fails(&run, "comonoid", "") == 0,
        format!("{rt} categories round-tripped"),
    );

    // 7. Cofunctor equivalence: homomorphism equations agree with the
    // cofunctor equations on two fixed comonoids, as exact set equality.
    push(
        7,
        "cofunctor equivalence",
        case_passed(&run, "comonoid", "cofunctor-equivalence/walking-arrow-self")
            && case_passed(&run, "comonoid", "cofunctor-equivalence/to-terminal"),
        String::new(),
    );

    // 8. Coalgebra ↔ copresheaf: exhaustive equivalence over the walking
    // arrow for total size ≤ 3, including hom-set bijections.
    push(
        8,
        "coalgebra-copresheaf equivalence",
        case_passed(&run, "coalgebra", "equivalence/count")
            && case_passed(&run, "coalgebra", "equivalence/roundtrips")
            && case_passed(&run, "coalgebra", "equivalence/homs")
            && fails(&run, "coalgebra", "") == 0,
        String::new(),
    );

    // 9. Typed composition: bicomodule composition agrees with typed
    // composition up to constructed isomorphism on ≥ 30 pairs, plus the
    // unit laws via the identity bicomodule.
    let pairs = passes(&run, "typed", "compose-agreement/");
    push(
        9,
        "typed composition",
        pairs >= 30
            && case_passed(&run, "typed", "unit-laws")
            && fails(&run, "typed", "") == 0,
        format!("{pairs} composable pairs"),
    );

    // 10. Migration: the representable-fiber case extracts X(a) on ≥ 10
    // instances, the hom-set formula matches the equalizer construction,
    // and a pullback of coalgebras is preserved.
    let yoneda = passes(&run, "migrate", "yoneda/");
    push(
        10,
        "migration",
        yoneda >= 10
            && passes(&run, "migrate", "set-formula/") >= 8
            && case_passed(&run, "migrate", "pullback-preservation")
            && fails(&run, "migrate", "") == 0,
        format!("{yoneda} instances"),
    );

    // 11. Presheaf generalization: the dependent-product adjunction and
    // the composition unit/associativity isomorphisms over the
    // walking-arrow and parallel-pair bases.
    push(
        11,
        "presheaf generalization",
        fails(&run, "presheaf", "") == 0
            && passes(&run, "presheaf", "pi-adjunction/") == 2
            && passes(&run, "presheaf", "compose-units/") == 2
            && passes(&run, "presheaf", "compose-assoc/") == 2,
        String::new(),
    );

    // 12. Determinism: two consecutive full runs at seed 0 produce
    // byte-identical reports.
    push(
        12,
        "determinism",
        run.to_report() == run2.to_report(),
        String::new(),
    );

    let mut all_ok = true;
    for (n, name, ok, detail) in &results {
        let status = if *ok { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            println!("criterion {n:2} ({name}): {status}");
        } else {
            println!("criterion {n:2} ({name}): {status} [{detail}]");
        }
        all_ok &= ok;
    }
    if !all_ok {
        let failing: Vec<String> = run
            .records
            .iter()
            .filter(|r| r.status == Status::Fail)
            .map(|r| format!("{}/{}: {:?}", r.suite, r.case, r.witness))
            .collect();
        panic!("acceptance criteria failed; failing cases: {failing:#?}");
    }
}
