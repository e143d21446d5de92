use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn k3strata(args: &[&str]) -> Output {
    run_with(args, None, &[])
}

fn run_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_k3strata"));
    cmd.args(args)
        .env_remove("K3STRATA_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const ONES: &str = "1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1";

#[test]
fn kummer_degree() {
    let out = k3strata(&[
        "kummer", "degree", "--n", "9", "--dprime", "26", "--parts", ONES,
    ]);
    assert_eq!(json_of(&out), json!({"d": 4196}));
    // a single value stands for all sixteen parts
    let out = k3strata(&[
        "kummer", "degree", "--n", "9", "--dprime", "26", "--parts", "1",
    ]);
    assert_eq!(json_of(&out), json!({"d": 4196}));
}

#[test]
fn classify_supersingular_polygon() {
    let out = k3strata(&["polygon", "classify", "--slopes", "1x22"]);
    assert_eq!(
        json_of(&out),
        json!({"class": "supersingular", "height": "infinite"})
    );
}

#[test]
fn classify_from_stdin() {
    let out = run_with(
        &["polygon", "classify"],
        Some(r#"{"segments": [[1,2,2],[1,1,18],[3,2,2]]}"#),
        &[],
    );
    assert_eq!(
        json_of(&out),
        json!({"class": "finite-height", "height": 2})
    );
    let out = run_with(
        &["polygon", "classify", "--input", "-"],
        Some(r#"{"slopes": ["0","1","2"], "weight": 2, "rank": 3}"#),
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("UnsupportedShape"));
}

#[test]
fn from_height() {
    let v = json_of(&k3strata(&["polygon", "from-height", "--height", "10"]));
    assert_eq!(v["display"], "{9/10x10, 1x2, 11/10x10}");
    assert_eq!(v["lies_above_hodge"], true);
}

#[test]
fn report_has_all_three_thresholds() {
    let v = json_of(&k3strata(&["coverage", "report-paper-bounds"]));
    let thresholds: Vec<i64> = v["families"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["threshold"].as_i64().unwrap())
        .collect();
    assert_eq!(thresholds, [4196, 48, 963]);

    let out = k3strata(&["coverage", "report-paper-bounds", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,dprime_min,part_bound,threshold,witness_count")
    );
    assert_eq!(lines.next(), Some("general,9,26,4,4196,162"));
}

#[test]
fn threshold_output_is_deterministic() {
    let args = [
        "coverage",
        "threshold",
        "--n",
        "9",
        "--dprime-min",
        "26",
        "--max-part",
        "4",
    ];
    let a = k3strata(&args);
    let b = run_with(&args, None, &[("K3STRATA_THREADS", "3")]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["threshold"], 4196);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 162);
}

#[test]
fn residue_verification() {
    let v = json_of(&k3strata(&["coverage", "verify-lemma-res"]));
    assert_eq!(v["verified"], true);
    let out = k3strata(&["coverage", "verify-lemma-res", "--max-part", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("IncompleteResidueCoverage"));

    let v = json_of(&k3strata(&[
        "coverage",
        "verify-remark",
        "--n",
        "9",
        "--to",
        "45",
    ]));
    assert_eq!(v.as_array().unwrap().len(), 37);
    let out = k3strata(&["coverage", "verify-remark", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("PartBoundEmpty"));
}

#[test]
fn curve_batch_from_stdin() {
    let input = "{\"p\": 5, \"a\": 1, \"b\": 1}\n\n{\"p\": 7, \"a\": 1, \"b\": 0}\n";
    let v = json_of(&run_with(&["curve", "count"], Some(input), &[]));
    assert_eq!(v[0]["count"], 9);
    assert_eq!(v[0]["trace"], -3);
    assert_eq!(v[1]["supersingular"], true);
    assert_eq!(v[1]["stratum"], "Sigma(10)");

    let out = run_with(&["curve", "count", "--format", "csv"], Some(input), &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("a,b,count,height,p,profile,stratum,supersingular,trace\n"));

    let out = run_with(
        &["curve", "count"],
        Some("{\"p\": 11, \"a\": 2, \"b\": 3}\n"),
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("SingularCurve"));
}

#[test]
fn surface_classify() {
    let v = json_of(&k3strata(&[
        "surface", "classify", "--p", "7", "--a1", "1", "--b1", "0", "--a2", "1", "--b2", "0",
    ]));
    assert_eq!(v["abelian_type"], "superspecial");
    assert_eq!(v["stratum"]["stratum"], "Sigma(10)");
    let v = json_of(&k3strata(&[
        "surface",
        "classify",
        "--profile",
        "supersingular",
        "--artin",
        "2",
    ]));
    assert_eq!(v["stratum"]["label"], "Sigma(9) \\ Sigma(10)");
    let out = k3strata(&["surface", "classify", "--profile", "supersingular"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("MissingArtinInvariant"));
}

#[test]
fn usage_errors_exit_two() {
    let out = k3strata(&["kummer", "degree", "--n", "9", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--bogus"));
    assert_eq!(k3strata(&[]).status.code(), Some(2));
    let out = k3strata(&[
        "kummer",
        "check-ampleness",
        "--n",
        "1",
        "--dprime",
        "1",
        "--parts",
        "1",
        "--variant",
        "min-elliptic:0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--variant"));
    let out = run_with(
        &["coverage", "verify-lemma-res"],
        None,
        &[("K3STRATA_THREADS", "many")],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let out = k3strata(&["polygon", "classify", "--slopes", "1x21"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("RankMismatch"));
    let out = k3strata(&[
        "kummer", "degree", "--n", "9", "--dprime", "26", "--parts", "1,2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("InvalidParams"));
}

#[test]
fn output_file_and_fixture_seeding() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = k3strata(&[
        "kummer",
        "slopes",
        "--profile",
        "mixed",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["height"], 2);

    let fixtures = dir.path().join("fixtures");
    let out = k3strata(&["--seed-fixtures", fixtures.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let seeded = std::fs::read_to_string(fixtures.join("derived.json")).unwrap();
    let committed = include_str!("../../core/tests/fixtures/derived.json");
    assert_eq!(seeded, committed);
}
