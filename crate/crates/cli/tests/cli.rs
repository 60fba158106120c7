use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use galshadow::group::are_isomorphic;
use galshadow::search::build_catalog;
use galshadow::FiniteGroup;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galshadow"))
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn scenario(name: &str) -> PathBuf {
    crate_dir().join("scenarios").join(format!("{name}.toml"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_scenario(name: &str, extra: &[&str]) -> (i32, String) {
    let path = scenario(name);
    let mut args = vec!["run", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn structured(name: &str, extra: &[&str]) -> (i32, Value) {
    let mut args = vec!["--format", "structured"];
    args.extend_from_slice(extra);
    let (code, text) = run_scenario(name, &args);
    (code, serde_json::from_str(&text).expect("structured output is JSON"))
}

#[test]
fn shipped_scenarios_have_the_expected_exit_codes() {
    let cases = [
        ("ep-identity", 0, "solved"),
        ("ep-d8-identity", 0, "solved"),
        ("ep-d8-over-klein", 1, "unsolvable"),
        ("certify-level6", 0, "passed"),
        ("certify-klein6", 1, "failed"),
        ("hom-enum", 0, "found"),
        ("fp-quotients", 0, "found"),
        ("fp-separate-sts", 0, "separated"),
        ("fp-separate-stst", 0, "separated"),
        ("fp-level", 0, "built"),
        ("fp-retraction", 0, "verified"),
        ("ram-s3", 0, "passed"),
        ("split-s3", 0, "split"),
        ("split-c4", 1, "no-section"),
        ("realize-gf4", 0, "verified"),
        ("realize-gf64", 0, "verified"),
        ("realize-singular", 1, "singular-basis"),
    ];
    let on_disk = fs::read_dir(crate_dir().join("scenarios"))
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "toml"))
        .count();
    assert_eq!(on_disk, cases.len());
    for (name, code, status) in cases {
        let (got, text) = run_scenario(name, &[]);
        assert_eq!(got, code, "{name}: {text}");
        assert!(text.contains(&format!("status: {status}\n")), "{name}: {text}");
        assert!(text.ends_with(" of 10000000\n"), "{name}: budget line missing");
    }
}

#[test]
fn unsolvable_problem_names_the_obstruction() {
    let (_, text) = run_scenario("ep-d8-over-klein", &[]);
    assert!(text.contains("no epimorphism exists (order obstruction 4 < 8)"));
}

#[test]
fn identity_problem_returns_phi() {
    let (code, doc) = structured("ep-identity", &[]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["gamma"], serde_json::json!([0, 1, 1, 1, 0, 0]));
    assert_eq!(doc["scenario"]["phi"], doc["result"]["gamma"]);
}

#[test]
fn separation_witness_block() {
    let (_, doc) = structured("fp-separate-sts", &[]);
    let w = &doc["result"]["witness"];
    assert_eq!(w["group"]["order"], 2);
    let values = w["values"].as_array().unwrap();
    assert_eq!(values.len(), 2);
    assert_ne!(values[0], values[1]);
    let (_, doc) = structured("fp-separate-stst", &[]);
    assert_eq!(doc["result"]["witness"]["group"]["order"], 6);
    let (code, doc) = structured("fp-separate-stst", &["--catalog-max", "4"]);
    assert_eq!(code, 1);
    assert_eq!(doc["status"], "not-separated");
}

#[test]
fn ramification_tower_block() {
    let (code, doc) = structured("ram-s3", &[]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["tower_orders"], serde_json::json!([3, 3, 6]));
    let checks = doc["result"]["checks"].as_object().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.values().all(|v| v == true));
}

#[test]
fn structured_output_has_statistics_and_echo() {
    let (_, doc) = structured("certify-level6", &["--budget", "5000000"]);
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["status", "exit_code", "kind", "result", "statistics", "scenario"]
    );
    let stats = &doc["statistics"];
    assert_eq!(stats["budget"], 5_000_000);
    assert_eq!(stats["catalog_bound"], 6);
    assert!(stats["search_nodes"].as_u64().unwrap() > 0);
    assert!(stats["elapsed_ms"].is_u64());
    assert_eq!(doc["scenario"]["kind"], "certify");
    assert_eq!(doc["result"]["failures"], serde_json::json!([]));
}

fn without_elapsed(mut v: Value) -> String {
    v["statistics"].as_object_mut().unwrap().remove("elapsed_ms");
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn structured_output_is_deterministic() {
    for name in [
        "certify-klein6",
        "fp-quotients",
        "fp-level",
        "ram-s3",
        "realize-gf64",
        "split-c4",
    ] {
        for jobs in ["1", "4"] {
            let a = structured(name, &["--jobs", jobs]).1;
            let b = structured(name, &["--jobs", jobs]).1;
            assert_eq!(a["statistics"]["jobs"], jobs.parse::<u64>().unwrap());
            assert_eq!(without_elapsed(a), without_elapsed(b), "{name}");
        }
        // the result does not depend on the worker count either
        let one = structured(name, &["--jobs", "1"]).1;
        let four = structured(name, &["--jobs", "4"]).1;
        assert_eq!(one["result"], four["result"], "{name}");
    }
}

#[test]
fn exhausted_budget_exits_three() {
    let (code, text) = run_scenario("certify-level6", &["--budget", "10"]);
    assert_eq!(code, 3);
    assert!(text.contains("status: budget-exceeded"));
    assert!(text.contains("search nodes: 10 of 10"));
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn input_errors_exit_two_with_a_field() {
    let dir = tempfile::tempdir().unwrap();
    let groups = crate_dir().join("scenarios/groups");
    let c2 = groups.join("C2.toml");
    let c2 = c2.to_str().unwrap();
    let cases = [
        ("missing.toml", "kind = \"hom-enum\"\ntarget = \"C2\"\n".to_owned(), "source"),
        ("unknown-kind.toml", "kind = \"frobnicate\"\n".to_owned(), "frobnicate"),
        (
            "undefined-group.toml",
            "kind = \"hom-enum\"\nsource = \"X\"\ntarget = \"X\"\n".to_owned(),
            "source: no group named \"X\"",
        ),
        (
            "bad-table.toml",
            "kind = \"hom-enum\"\nsource = \"G\"\ntarget = \"G\"\n[groups.G]\nkind = \"cayley\"\ntable = [[0, 1], [0, 1]]\n"
                .to_owned(),
            "groups.G",
        ),
        (
            "bad-phi.toml",
            format!(
                "kind = \"ep-solve\"\nsource = {{ group = \"C2\", marks = [[1]] }}\nA = \"C2\"\nB = \"C2\"\nphi = [0, 0]\npsi = [0, 1]\nmarksB = [[1]]\n[groups.C2]\nfile = \"{c2}\"\n"
            ),
            "phi",
        ),
        (
            "bad-limits.toml",
            "kind = \"fp-level\"\nfactors = []\n[limits]\nspeed = 3\n".to_owned(),
            "limits",
        ),
    ];
    for (name, body, needle) in cases {
        let path = write(dir.path(), name, &body);
        let out = run(&["run", path.to_str().unwrap()]);
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(out.status.code(), Some(2), "{name}: {text}");
        assert!(text.contains("status: input-error"), "{name}: {text}");
        assert!(text.contains(needle), "{name}: {text}");
    }
    let out = run(&["run", dir.path().join("nope.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inline_permutation_groups_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let body = "kind = \"hom-enum\"\nsource = \"S3\"\ntarget = \"C2\"\nepi = true\n\
                [groups.S3]\nkind = \"perm\"\ndegree = 3\ngenerators = [[1, 0, 2], [1, 2, 0]]\n\
                [groups.C2]\ncatalog = \"C2\"\n";
    let path = write(dir.path(), "perm.toml", body);
    let out = run(&["run", path.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["count"], 1);
}

#[test]
fn report_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let (code, stdout) = run_scenario(
        "ram-s3",
        &["--format", "structured", "--out", out_path.to_str().unwrap()],
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let doc: Value = serde_json::from_str(&fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(doc["status"], "passed");
}

#[test]
fn shipped_catalog_matches_a_fresh_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["catalog", "--max", "12", "--dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let shipped = crate_dir().join("data/catalog");
    let mut names: Vec<String> = fs::read_dir(&shipped)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    let mut fresh: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    fresh.sort();
    assert_eq!(names, fresh);
    for n in &names {
        assert_eq!(
            fs::read(shipped.join(n)).unwrap(),
            fs::read(dir.path().join(n)).unwrap(),
            "{n}"
        );
    }
}

#[test]
fn emitted_groups_read_back_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["catalog", "--max", "12", "--dir", dir.path().to_str().unwrap()])
        .status
        .success());
    let cat = build_catalog(12).unwrap();
    for g in cat.iter() {
        let file = dir.path().join(format!("{}.toml", g.label().unwrap()));
        let out = run(&["show", file.to_str().unwrap(), "--format", "structured"]);
        assert!(out.status.success());
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        let table: Vec<Vec<usize>> = serde_json::from_value(doc["table"].clone()).unwrap();
        let back = FiniteGroup::from_table(&table, None).unwrap();
        let w = are_isomorphic(g, &back).expect("re-ingested group is isomorphic");
        assert!(w.verify() && w.is_iso());
        assert_eq!(doc["name"], g.label().unwrap());
    }
}

#[test]
fn a_manifest_catalog_can_replace_the_generated_one() {
    let manifest = crate_dir().join("data/catalog/manifest.toml");
    let (code, doc) = structured("certify-klein6", &["--catalog", manifest.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["result"]["failures"][0]["target"]["name"], "S3");
    let (code, text) = run_scenario(
        "certify-klein6",
        &["--catalog", manifest.to_str().unwrap(), "--catalog-max", "13"],
    );
    assert_eq!(code, 2, "{text}");
}
