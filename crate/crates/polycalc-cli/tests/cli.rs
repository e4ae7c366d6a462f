//! End-to-end checks of the binary: exit codes, canonical round trips,
//! worked examples, and report determinism through the process boundary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polycalc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polycalc-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const Y2: &str = r#"{"base":"finset","positions":[{"id":0,"dirs":[0,1]}]}"#;
const TWO_Y: &str = r#"{"base":"finset","positions":[{"id":0,"dirs":[0]},{"id":1,"dirs":[0]}]}"#;

#[test]
fn usage_error_exits_2() {
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_error_exits_1_with_named_precondition() {
    let dir = tempdir("domain");
    let p = write(&dir, "p.json", Y2);
    let f = write(
        &dir,
        "f.json",
        r#"{"dom":{"elements":[5]},"cod":{"elements":[0]},"map":{"5":0}}"#,
    );
    // frown with an index whose endpoints do not match the polynomials.
    let out = run(&[
        "frown",
        p.to_str().unwrap(),
        f.to_str().unwrap(),
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("positions"), "stderr was: {msg}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn budget_exhaustion_is_a_domain_error() {
    let dir = tempdir("budget");
    let p = write(&dir, "p.json", Y2);
    let q = write(&dir, "q.json", TWO_Y);
    let out = run(&[
        "--budget",
        "1",
        "compose",
        p.to_str().unwrap(),
        q.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn compose_example_gives_4y2() {
    let dir = tempdir("compose");
    let p = write(&dir, "p.json", Y2);
    let q = write(&dir, "q.json", TWO_Y);
    let out = run(&["compose", p.to_str().unwrap(), q.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let positions = v["positions"].as_array().unwrap();
    assert_eq!(positions.len(), 4);
    for pos in positions {
        assert_eq!(pos["dirs"].as_array().unwrap().len(), 2);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn homs_count_example() {
    let dir = tempdir("homs");
    let p = write(&dir, "p.json", Y2);
    let q = write(&dir, "q.json", TWO_Y);
    let out = run(&[
        "homs",
        p.to_str().unwrap(),
        q.to_str().unwrap(),
        "--count-only",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "\"4\"");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn roundtrip_is_byte_identical_on_canonical_files() {
    let dir = tempdir("roundtrip");
    let p = write(&dir, "p.json", Y2);
    let first = run(&["roundtrip", "--kind", "poly", p.to_str().unwrap()]);
    assert!(first.status.success());
    let canon = write(
        &dir,
        "canon.json",
        &String::from_utf8(first.stdout.clone()).unwrap(),
    );
    let second = run(&["roundtrip", "--kind", "poly", canon.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fincat_schema_error_names_the_missing_pair() {
    let dir = tempdir("schema");
    // Walking arrow with the (f, id_a) composition entry removed.
    let broken = r#"{
      "objects": {"elements": ["a", "b"]},
      "morphisms": {"elements": ["f", "id_a", "id_b"]},
      "src": {"f": "a", "id_a": "a", "id_b": "b"},
      "tgt": {"f": "b", "id_a": "a", "id_b": "b"},
      "id": {"a": "id_a", "b": "id_b"},
      "compose": [["id_a","id_a","id_a"],["id_b","id_b","id_b"],
                  ["id_b","f","f"]]
    }"#;
    let path = write(&dir, "cat.json", broken);
    let out = run(&["validate", "--kind", "fincat", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("missing composition entry"), "stderr: {msg}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn migrate_example_extracts_the_fiber() {
    let dir = tempdir("migrate");
    // Walking-arrow comonoid via cat2com on the internal-category file.
    let cat = r#"{
      "objects": {"elements": ["a", "b"]},
      "morphisms": {"elements": ["f", "id_a", "id_b"]},
      "src": {"f": "a", "id_a": "a", "id_b": "b"},
      "tgt": {"f": "b", "id_a": "a", "id_b": "b"},
      "id": {"a": "id_a", "b": "id_b"},
      "k": [["id_a","id_a","id_a"],["id_b","id_b","id_b"],
            ["id_a","f","f"],["f","id_b","f"]]
    }"#;
    let cat_path = write(&dir, "cat.json", cat);
    let com_path = dir.join("d.json");
    let out = run(&[
        "--out",
        com_path.to_str().unwrap(),
        "cat2com",
        cat_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // Terminal comonoid for the left side.
    let term = r#"{
      "objects": {"elements": ["o"]},
      "morphisms": {"elements": ["id_o"]},
      "src": {"id_o": "o"},
      "tgt": {"id_o": "o"},
      "id": {"o": "id_o"},
      "k": [["id_o","id_o","id_o"]]
    }"#;
    let term_path = write(&dir, "term.json", term);
    let term_com = dir.join("c.json");
    assert!(run(&[
        "--out",
        term_com.to_str().unwrap(),
        "cat2com",
        term_path.to_str().unwrap(),
    ])
    .status
    .success());

    // The bicomodule with one position whose fiber is the corepresentable
    // at a, built with the library and round-tripped through its file
    // form with external comonoid references.
    let m_path = {
        use polycalc_core::budget::Budget;
        use polycalc_core::coalgebra::{copresheaf_to_coalg, Copresheaf};
        use polycalc_core::comonoid::fincat_comonoid;
        use polycalc_core::fincat::FinCat;
        use polycalc_core::finset::FinFn;
        use polycalc_core::label::Label;
        use polycalc_core::poly::{Poly, PolyMor};
        use polycalc_core::poly_ops::compose;

        let budget = Budget::default();
        let d = fincat_comonoid(&FinCat::walking_arrow(), budget).unwrap();
        let c = fincat_comonoid(&FinCat::terminal(), budget).unwrap();
        let xp =
            Copresheaf::corepresentable(&FinCat::walking_arrow(), &Label::str("a")).unwrap();
        let fiber = copresheaf_to_coalg(&xp, &d).unwrap();
        let m = Poly::from_table(vec![(
            Label::str("pos"),
            fiber.carrier.iter().cloned().collect(),
        )])
        .unwrap();
        let cm = compose(&c.carrier, &m, budget).unwrap();
        let left = PolyMor::from_fns(
            &m,
            &cm,
            |i| {
                let table =
                    FinFn::constant(c.carrier.dirs(&Label::str("o")), m.positions(), i).unwrap();
                Label::pair(Label::str("o"), table.table_label())
            },
            |_, dir| dir.expect_pair().1.clone(),
        )
        .unwrap();
        let md = compose(&m, &d.carrier, budget).unwrap();
        let right = PolyMor::from_fns(
            &m,
            &md,
            |i| {
                let table = FinFn::from_fn(
                    m.dirs(i).clone(),
                    d.carrier.positions().clone(),
                    |dm| fiber.pos.apply(dm).clone(),
                )
                .unwrap();
                Label::pair(i.clone(), table.table_label())
            },
            |_, dir| {
                let (dm, g) = dir.expect_pair();
                fiber.step(dm, g).clone()
            },
        )
        .unwrap();
        let bi = polycalc_core::bicomodule::Bicomodule::new(c, d, m, left, right, budget).unwrap();
        let mut v = polycalc_core::io::bicomodule_to_value(&bi);
        v["c"] = serde_json::json!({ "file": "c.json" });
        v["d"] = serde_json::json!({ "file": "d.json" });
        write(&dir, "m.json", &polycalc_core::io::to_canonical_bytes(&v))
    };
    let check = run(&["bicomod-check", m_path.to_str().unwrap()]);
    assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stderr));
    let report: serde_json::Value = serde_json::from_slice(&check.stdout).unwrap();
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["ok"].as_bool().unwrap()));

    // A copresheaf X with X(a) = {x0, x1}, X(b) = {z} as a coalgebra.
    let x = r#"{
      "c": {"file": "d.json"},
      "S": {"elements": [["a","x0"],["a","x1"],["b","z"]]},
      "kappa1": {
        "dom": {"elements": [["a","x0"],["a","x1"],["b","z"]]},
        "cod": {"elements": ["a","b"]},
        "map": {"[\"a\",\"x0\"]":"a","[\"a\",\"x1\"]":"a","[\"b\",\"z\"]":"b"}
      },
      "kappaSharp": {
        "dom": {"elements": [
          [["a","x0"],["a","f"]],[["a","x0"],["a","id_a"]],
          [["a","x1"],["a","f"]],[["a","x1"],["a","id_a"]],
          [["b","z"],["b","id_b"]]
        ]},
        "cod": {"elements": [["a","x0"],["a","x1"],["b","z"]]},
        "map": {
          "[[\"a\",\"x0\"],[\"a\",\"f\"]]": ["b","z"],
          "[[\"a\",\"x0\"],[\"a\",\"id_a\"]]": ["a","x0"],
          "[[\"a\",\"x1\"],[\"a\",\"f\"]]": ["b","z"],
          "[[\"a\",\"x1\"],[\"a\",\"id_a\"]]": ["a","x1"],
          "[[\"b\",\"z\"],[\"b\",\"id_b\"]]": ["b","z"]
        }
      }
    }"#;
    let x_path = write(&dir, "x.json", x);
    let out = run(&["migrate", m_path.to_str().unwrap(), x_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // |migrate(m, X)| = |X(a)| = 2.
    assert_eq!(v["S"]["elements"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn laws_reports_are_deterministic_across_processes() {
    let a = run(&["laws", "--seed", "0", "--scale-down", "20"]);
    let b = run(&["laws", "--seed", "0", "--scale-down", "20"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // A different seed changes the sampled corpus.
    let c = run(&["laws", "--seed", "1", "--scale-down", "20"]);
    assert!(c.status.success());
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn laws_budget_skips_do_not_fail_the_run() {
    let out = run(&[
        "laws",
        "--seed",
        "0",
        "--scale-down",
        "50",
        "--budget",
        "2000",
        "--suites",
        "typed",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("skipped-budget"));
}
