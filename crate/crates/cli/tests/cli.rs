use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmacover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("machine output is JSON")
}

#[test]
fn classify_s3() {
    let o = run(&["classify", "S3", "--sigma", "sigma1", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["sigma_soluble"], true);
    assert_eq!(v["sigma_nilpotent"], false);
    assert_eq!(v["psigma_t"], true);
    assert_eq!(v["residual_order"], 3);
}

#[test]
fn classify_trivial_and_one_block() {
    let v = json(&run(&[
        "classify", "C1", "--sigma", "[2][3]", "--format", "machine",
    ]));
    for k in [
        "sigma_primary",
        "sigma_nilpotent",
        "sigma_soluble",
        "psigma_t",
        "complete_hall_set",
    ] {
        assert_eq!(v[k], true, "{}", k);
    }
    assert_eq!(v["residual_order"], 1);

    let v = json(&run(&[
        "classify", "--group", "A5", "--sigma", "[2,3,5]", "--format", "machine",
    ]));
    assert_eq!(v["sigma_primary"], true);
    assert_eq!(v["sigma_nilpotent"], true);
}

#[test]
fn human_classify_output() {
    let o = run(&["classify", "S4"]);
    let text = stdout(&o);
    assert!(text.contains("residual order"));
    assert!(text.contains("12"));
}

#[test]
fn verify_examples_and_exit_codes() {
    let o = run(&[
        "verify",
        "--group",
        "A4",
        "--statement",
        "ThmA.ii",
        "--sigma",
        "sigma1",
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["verdict"], "confirmed");
    assert_eq!(v[0]["vacuous"], false);
    assert_eq!(v[0]["witness"]["kind"], "uncovered_maximal");

    let o = run(&[
        "verify",
        "--group",
        "C6",
        "--statement",
        "ThmA.iii",
        "--sigma",
        "sigma1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("confirmed-vacuous"));

    let o = run(&[
        "verify",
        "--group",
        "S4",
        "--statement",
        "Lem2.5.fwd",
        "--sigma",
        "sigma1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not a PσT-group"));

    let o = run(&[
        "verify",
        "--group",
        "A5",
        "--statement",
        "ThmA.i",
        "--sigma",
        "all",
        "--format",
        "machine",
    ]);
    assert_eq!(json(&o).as_array().unwrap().len(), 5);
}

#[test]
fn verify_converse_with_supplied_subgroups() {
    let o = run(&[
        "verify",
        "--group",
        "F20",
        "--statement",
        "Lem2.5.conv",
        "--d-gen",
        "(1 2 3 4 5)",
        "--m-gen",
        "(2 3 5 4)",
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)[0]["vacuous"], false);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["verify", "--group", "A4", "--statement", "ThmB"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["classify", "NoSuchGroup"]).status.code(), Some(2));
    assert_eq!(
        run(&["classify", "S3", "--sigma", "all"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "S3", "--sigma", "[4]"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["permutable", "S3", "--gen", "(1 9)"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn capacity_exit_3() {
    let o = run(&["classify", "S5", "--subgroup-bound", "50"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("skipped"));
    let o = run(&[
        "verify",
        "--group",
        "S5",
        "--statement",
        "Lem2.4",
        "--subgroup-bound",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn permutable_and_residual() {
    let v = json(&run(&[
        "permutable",
        "S3",
        "--gen",
        "(1 2 3)",
        "--format",
        "machine",
    ]));
    assert_eq!(v["sigma_permutable"], true);
    let v = json(&run(&["residual", "F21", "--format", "machine"]));
    assert_eq!(v["order"], 7);
}

#[test]
fn campaign_on_empty_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.corpus");
    fs::write(&empty, "").unwrap();
    let o = run(&[
        "campaign",
        "--corpus",
        empty.to_str().unwrap(),
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["outcomes"].as_array().unwrap().len(), 0);
}

#[test]
fn campaign_with_custom_corpus_and_filter() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("mine.corpus");
    fs::write(&file, "group S3 deg 3\ngen (1 2 3)\ngen (1 2)\norder 6\n\ngroup V4 deg 4\ngen (1 2)(3 4)\ngen (1 3)(2 4)\norder 4\n").unwrap();
    let o = run(&[
        "campaign",
        "--corpus-file",
        file.to_str().unwrap(),
        "--only",
        "ThmA.iii",
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let outcomes = v["outcomes"].as_array().unwrap();
    // S3 has two partitions of {2,3}, V4 one of {2}
    assert_eq!(outcomes.len(), 3);
    assert!(outcomes.iter().all(|o| o["statement_id"] == "ThmA.iii"));

    let list = json(&run(&[
        "corpus-list",
        "--corpus",
        file.to_str().unwrap(),
        "--format",
        "machine",
    ]));
    assert_eq!(list[1]["name"], "V4");

    fs::write(&file, "group S3 deg 3\ngen (1 2 3)\ngen (1 2)\norder 7\n").unwrap();
    let o = run(&["campaign", "--corpus", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("declared order 7"));
}

#[test]
fn campaign_reports_are_byte_identical_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = run(&[
        "campaign",
        "--out",
        a.to_str().unwrap(),
        "--no-timestamps",
        "--jobs",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 counterexamples"));
    run(&[
        "campaign",
        "--out",
        b.to_str().unwrap(),
        "--no-timestamps",
        "--jobs",
        "3",
    ]);
    let ra = fs::read(&a).unwrap();
    assert_eq!(ra, fs::read(&b).unwrap());
    let v: Value = serde_json::from_slice(&ra).unwrap();
    assert!(v["generated_unix"].is_null());
    assert_eq!(
        v["summary"]["invariant_failures"].as_array().unwrap().len(),
        0
    );
}

#[test]
fn unwritable_output_is_a_usage_error() {
    let o = run(&["campaign", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(o.status.code(), Some(2));
}
