use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn minorsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minorsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn int_matrix(rows: &[&[i64]]) -> String {
    let entries: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(i64::to_string).collect()).collect();
    serde_json::json!({"ring": "int", "rows": rows.len(), "cols": rows[0].len(), "entries": entries}).to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[&[i64]], &str); 3] = [
        ("pf", &[&[0, 1], &[-1, 0]], "1"),
        ("minorsum", &[&[1, 1, 1], &[1, 2, 3]], "4"),
        ("det", &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], "1"),
    ];
    for (op, rows, expected) in cases {
        let file = write(dir.path(), &format!("{op}.json"), &int_matrix(rows));
        let out = minorsum(&["eval", op, file.to_str().unwrap()]);
        assert!(out.status.success(), "{op}: {}", stderr(&out));
        assert_eq!(stdout(&out).trim(), expected, "{op}");
    }
}

#[test]
fn eval_f_takes_three_files() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", &int_matrix(&[&[1, 0, 0], &[0, 1, 0]]));
    let x = write(dir.path(), "x.json", &int_matrix(&[&[0, 2, 0], &[5, 0, 0], &[0, 0, 0]]));
    let (a, x) = (a.to_str().unwrap(), x.to_str().unwrap());
    // A = B = (Id | 0): f reduces to X12 - X21.
    let out = minorsum(&["eval", "f", a, a, x]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "-3");
    let out = minorsum(&["eval", "f", a]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("expected 3"), "{}", stderr(&out));
}

#[test]
fn eval_reports_file_and_position_on_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"ring\": \"int\",\n \"rows\": 2,\n oops}");
    let out = minorsum(&["eval", "det", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("bad.json") && err.contains("line 3"), "{err}");

    let odd = write(dir.path(), "odd.json", &int_matrix(&[&[0]]));
    let out = minorsum(&["eval", "pf", odd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_byun_example_passes() {
    let out = minorsum(&[
        "verify",
        "--identity",
        "byun",
        "--m",
        "1..3",
        "--n",
        "3..5",
        "--trials",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.last().unwrap();
    assert_eq!(summary["kind"], "summary");
    assert_eq!(summary["pass"], true);
    assert_eq!(summary["totals"]["trials"], 3 * 3 * 50);
    assert_eq!(summary["config"]["identities"], serde_json::json!(["byun"]));
    assert!(lines.iter().all(|l| l["kind"] != "failure"));
}

#[test]
fn verify_symbolic_example_passes() {
    let out = minorsum(&[
        "verify",
        "--identity",
        "all",
        "--ring",
        "poly",
        "--m",
        "2",
        "--n",
        "3",
        "--trials",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let summary: Value = serde_json::from_str(stdout(&out).lines().last().unwrap()).unwrap();
    assert_eq!(summary["pass"], true);
    assert_eq!(summary["config"]["ring"], "poly");
}

#[test]
fn verify_unknown_identity_lists_valid_ids() {
    let out = minorsum(&["verify", "--identity", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("bogus"), "{err}");
    for id in ["main1", "okada", "byun", "ab2", "cauchy-binet-pf", "lemma-iswa"] {
        assert!(err.contains(id), "missing {id}: {err}");
    }
}

#[test]
fn verify_writes_report_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = minorsum(&[
        "verify",
        "--identity",
        "okada,iswa",
        "--m",
        "2",
        "--n",
        "2..4",
        "--trials",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let kinds: Vec<String> = text
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).unwrap()["kind"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(kinds, ["identity", "identity", "summary"]);
}

#[test]
fn paths_prints_counts_for_every_route() {
    let dir = TempDir::new().unwrap();
    let file = write(
        dir.path(),
        "p.json",
        r#"{"starts": [[0, 0]], "ends": [[0, 4], [1, 3], [2, 2], [3, 1], [4, 0]], "choose": 1}"#,
    );
    let out = minorsum(&["paths", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["count"], "16");
    for route in ["brute", "okada", "byun"] {
        assert_eq!(v["routes"][route], "16", "{route}");
    }

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"starts": [[0, 0]], "ends": [[0, 0], [1, 1]], "choose": 1}"#,
    );
    let out = minorsum(&["paths", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schur_prints_polynomial() {
    let out = minorsum(&["schur", "--lambda", "2,1", "--vars", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "x1^2*x2 + x1*x2^2");
    let out = minorsum(&["schur", "--lambda", "1", "--mu", "2"]);
    assert_eq!(stdout(&out).trim(), "0");
    let out = minorsum(&["schur", "--lambda", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}
