use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn manifest_path(parts: &[&str]) -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.extend(parts);
    p
}

fn fixture(name: &str) -> String {
    manifest_path(&["tests", "fixtures", name]).display().to_string()
}

fn gapwords(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapwords"))
        .args(args)
        .output()
        .expect("run gapwords")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn json_lines(output: &Output) -> Vec<Value> {
    stdout(output)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON line {l:?}: {e}")))
        .collect()
}

fn assert_code(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
}

/// Compares with `tests/golden/<name>`; `GAPWORDS_BLESS=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = manifest_path(&["tests", "golden", name]);
    if std::env::var_os("GAPWORDS_BLESS").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name} differs");
}

#[test]
fn closed_form_with_cross_check() {
    let out = gapwords(&[
        "complexity",
        "--spec",
        &fixture("linear_gap_1_0.json"),
        "--n-to",
        "50",
        "--method",
        "closed",
        "--cross-check",
    ]);
    assert_code(&out, 0);
    let lines = json_lines(&out);
    assert_eq!(lines[0]["command"], "complexity");
    let row5 = lines.iter().find(|l| l["n"] == 5).unwrap();
    assert_eq!(row5["f"], 10);
    assert_eq!(lines.last().unwrap()["cross_check"], "ok");
    assert_eq!(lines.len(), 52);
}

#[test]
fn complexity_golden() {
    let out = gapwords(&["complexity", "--spec", &fixture("linear_gap_1_0.json"), "--n-to", "12"]);
    assert_code(&out, 0);
    golden("complexity_linear_gap_1_0.jsonl", &stdout(&out));
}

#[test]
fn periodic_rows_are_constant() {
    let out = gapwords(&[
        "complexity",
        "--spec",
        &fixture("periodic_run_3.json"),
        "--method",
        "nondecreasing",
        "--n-to",
        "30",
        "--cross-check",
    ]);
    assert_code(&out, 0);
    for row in json_lines(&out).iter().filter(|l| l.get("f").is_some()) {
        if row["n"].as_u64().unwrap() >= 2 {
            assert_eq!(row["f"], 3);
        }
    }
}

#[test]
fn every_method_agrees_with_enumeration() {
    let cases = [
        ("linear_gap_1_0.json", "recurrence"),
        ("linear_gap_1_0.json", "blockwise"),
        ("linear_gap_1_0.json", "oracle"),
        ("exponential_g_2.json", "closed"),
        ("staircase_blocks.json", "nondecreasing"),
        ("periodic_run_3.json", "blockwise"),
    ];
    for (spec, method) in cases {
        let out = gapwords(&[
            "complexity",
            "--spec",
            &fixture(spec),
            "--n-to",
            "40",
            "--method",
            method,
            "--cross-check",
        ]);
        assert_code(&out, 0);
    }
}

#[test]
fn misdeclared_class_fails_cross_check() {
    let out = gapwords(&[
        "complexity",
        "--spec",
        &fixture("misdeclared.json"),
        "--n-to",
        "12",
        "--cross-check",
    ]);
    assert_code(&out, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("mismatch at n = 2"));
    assert_eq!(json_lines(&out).last().unwrap()["cross_check"], "mismatch");
}

#[test]
fn usage_and_spec_errors_exit_one() {
    let out = gapwords(&["complexity", "--spec", &fixture("broken.json")]);
    assert_code(&out, 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
    assert_code(&gapwords(&["complexity", "--spec", &fixture("missing.json")]), 1);
    assert_code(&gapwords(&["complexity", "--bogus"]), 1);
    assert_code(&gapwords(&["--help"]), 0);
}

#[test]
fn csv_output() {
    let out = gapwords(&[
        "complexity",
        "--spec",
        &fixture("periodic_run_3.json"),
        "--method",
        "nondecreasing",
        "--n-to",
        "3",
        "--csv",
    ]);
    assert_code(&out, 0);
    assert_eq!(
        stdout(&out),
        "n,f,delta_f,s,method,certified\n1,2,1,1,nondecreasing,true\n2,3,0,0,nondecreasing,true\n3,3,0,0,nondecreasing,true\n"
    );
}

#[test]
fn output_is_reproducible() {
    let args = [
        "complexity",
        "--spec",
        &fixture("exponential_g_2.json"),
        "--n-to",
        "30",
        "--method",
        "oracle",
    ];
    assert_eq!(gapwords(&args).stdout, gapwords(&args).stdout);
    let exp = ["experiment", "--count", "4", "--horizon", "30"];
    let first = gapwords(&exp);
    assert_code(&first, 0);
    assert_eq!(first.stdout, gapwords(&exp).stdout);
    assert_eq!(first.stdout, gapwords(&[&exp[..], &["--seed", "0"]].concat()).stdout);
}

#[test]
fn realizable_families() {
    let out = gapwords(&[
        "realizable",
        "--family",
        "ex42",
        "--q",
        "3",
        "--horizon",
        "300",
        "--verify",
        "50",
    ]);
    assert_code(&out, 0);
    let lines = json_lines(&out);
    let summary = lines.iter().find(|l| l.get("overall").is_some()).unwrap();
    assert_eq!(summary["overall"], "accepted_up_to_horizon");
    assert_eq!(summary["witnesses"], serde_json::json!([0, 1]));
    assert!(lines.iter().filter_map(|l| l.get("verify")).all(|v| v["ok"] == true));

    let out = gapwords(&["realizable", "--family", "ex43", "--q", "3", "--horizon", "300"]);
    assert_code(&out, 0);
    let lines = json_lines(&out);
    let candidates: Vec<&Value> = lines.iter().filter(|l| l.get("p").is_some()).collect();
    assert_eq!(candidates.len(), 3);
    for c in candidates {
        assert_eq!(c["verdict"], "rejected");
        assert_eq!(c["index"].as_u64().unwrap(), 1 << (2 - c["p"].as_u64().unwrap()));
    }
    assert_eq!(lines.last().unwrap()["overall"], "rejected");
}

#[test]
fn realizable_from_profile_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("profile.json");
    let f: Vec<u64> = (1..=62u64).map(|n| if n <= 4 { n + 1 } else { 2 * n - 3 }).collect();
    fs::write(&path, serde_json::json!({ "f": f }).to_string()).unwrap();
    let out = gapwords(&[
        "realizable",
        "--profile",
        path.to_str().unwrap(),
        "--horizon",
        "60",
        "--verify",
        "30",
    ]);
    assert_code(&out, 0);
    let summary = json_lines(&out)
        .into_iter()
        .find(|l| l.get("overall").is_some())
        .unwrap();
    assert_eq!(summary["witnesses"], serde_json::json!([0, 1, 2]));
    assert_code(
        &gapwords(&["realizable", "--profile", path.to_str().unwrap(), "--horizon", "100"]),
        1,
    );
}

#[test]
fn construct_writes_a_verified_spec() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("word.json");
    let out = gapwords(&["construct", "--a", "2", "--b", "5", "--out", path.to_str().unwrap()]);
    assert_code(&out, 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("verified on [24, 54]"));
    let lines = json_lines(&out);
    assert_eq!(lines[1]["K"], 24);
    assert_eq!(lines.last().unwrap()["verified"], true);

    let check = gapwords(&[
        "complexity",
        "--spec",
        path.to_str().unwrap(),
        "--n-from",
        "24",
        "--n-to",
        "40",
        "--cross-check",
    ]);
    assert_code(&check, 0);
    for row in json_lines(&check).iter().filter(|l| l.get("f").is_some()) {
        assert_eq!(row["f"].as_u64().unwrap(), 2 * row["n"].as_u64().unwrap() + 5);
    }

    let neg = gapwords(&["construct", "--a", "3", "--b", "-2"]);
    assert_code(&neg, 0);
    assert_code(&gapwords(&["construct", "--a", "1", "--b", "5"]), 1);
    assert_code(&gapwords(&["construct", "--a", "0", "--b", "4", "--blockwise"]), 0);
    assert_code(&gapwords(&["construct", "--a", "1", "--b", "7", "--blockwise"]), 1);
}

#[test]
fn diagram_goldens() {
    let spec = fixture("linear_gap_1_0.json");
    let ascii = gapwords(&["diagram", "--spec", &spec, "--n", "4"]);
    assert_code(&ascii, 0);
    golden("diagram_linear_gap_1_0_n4.txt", &stdout(&ascii));
    let svg = gapwords(&["diagram", "--spec", &spec, "--n", "4", "--format", "svg"]);
    assert_code(&svg, 0);
    golden("diagram_linear_gap_1_0_n4.svg", &stdout(&svg));
    assert_code(
        &gapwords(&["diagram", "--spec", &fixture("periodic_run_3.json"), "--n", "4"]),
        1,
    );
}

#[test]
fn classify_and_bench() {
    let out = gapwords(&[
        "classify",
        "--spec",
        &fixture("staircase_blocks.json"),
        "--horizon",
        "100",
    ]);
    assert_code(&out, 0);
    let report = &json_lines(&out)[1];
    assert_eq!(report["non_decreasing"], true);
    assert_eq!(report["injective"], false);

    let out = gapwords(&[
        "bench",
        "--spec",
        &fixture("exponential_g_2.json"),
        "--n-list",
        "100,1000000000",
        "--repeat",
        "1",
    ]);
    assert_code(&out, 0);
    let lines = json_lines(&out);
    assert_eq!(lines[1]["oracle"]["status"], "ok");
    assert_eq!(lines[1]["oracle"]["f"], lines[1]["f"]);
    assert_eq!(lines[2]["f"], 1_536_870_913u64);
    assert_eq!(lines[2]["oracle"]["status"], "refused");
}
