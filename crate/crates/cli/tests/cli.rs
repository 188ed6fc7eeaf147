use std::path::Path;
use std::process::{Command, Output};

use nsbetti_cli::output::{tables_json, TableRecord};

fn nsbetti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsbetti"))
        .args(args)
        .env_remove("NSBETTI_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_csv_matches_reference_column() {
    let o = nsbetti(&[
        "compute",
        "--g1",
        "3",
        "--g2",
        "3",
        "--component",
        "m12",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "i,B_i");
    assert_eq!(&rows[1..5], ["0,1", "1,0", "2,3", "3,12"]);
    assert_eq!(rows[7], "6,81");
    assert_eq!(*rows.last().unwrap(), "30,1");
    assert_eq!(rows.len(), 32);
}

#[test]
fn compute_intersection_json() {
    let o = nsbetti(&[
        "compute",
        "--g1",
        "3",
        "--g2",
        "3",
        "--component",
        "intersection",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rec: TableRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec.betti[0], "2");
    assert_eq!(rec.betti[6], "162");
    assert_eq!(rec.degree, 30);
    assert_eq!(rec.euler_char, "0");
    assert_eq!(tables_json(&[rec]), stdout(&o));
}

#[test]
fn compute_all_components_round_trips() {
    let o = nsbetti(&["compute", "--g1", "4", "--g2", "3", "--component", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<TableRecord> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(recs.len(), 3);
    assert_eq!(tables_json(&recs), stdout(&o));
    let csv = stdout(&nsbetti(&[
        "compute",
        "--g1",
        "4",
        "--g2",
        "3",
        "--component",
        "all",
        "--format",
        "csv",
    ]));
    assert!(csv.starts_with("component,i,B_i\nm12,0,1\n"));
}

#[test]
fn bad_arguments_exit_2() {
    for args in [
        &["compute", "--g1", "1", "--g2", "3"][..],
        &["compute", "--g1", "3"],
        &["compute", "--g1", "3", "--g2", "3", "--format", "xml"],
        &["verify", "--grid-max", "2"],
        &["frobnicate"],
    ] {
        assert_eq!(nsbetti(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table1_pristine() {
    let o = nsbetti(&["table1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("0 mismatches across all filled cells"));
}

#[test]
fn table1_fixture_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let o = nsbetti(&["table1", "--fixture", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));

    let corrupt = dir.path().join("corrupt.json");
    std::fs::write(&corrupt, "{\"(3,3)\": [1, 2").unwrap();
    assert_eq!(
        nsbetti(&["table1", "--fixture", corrupt.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );

    let tampered = dir.path().join("tampered.json");
    let text = nsbetti_cli::fixture::BUNDLED.replace("150346", "150347");
    std::fs::write(&tampered, text).unwrap();
    let o = nsbetti(&["table1", "--fixture", tampered.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH (4,5) B_24: table 150347, computed 150346"));
}

#[test]
fn verify_small_grid_passes() {
    let o = nsbetti(&["verify", "--grid-max", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["failed"], 0);
    let rows = doc["results"].as_array().unwrap();
    let keys: Vec<(u64, u64, String)> = rows
        .iter()
        .map(|r| {
            (
                r["g1"].as_u64().unwrap(),
                r["g2"].as_u64().unwrap(),
                r["name"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn injected_faults_fail_with_witness() {
    let o = nsbetti(&[
        "verify",
        "--grid-max",
        "3",
        "--inject-fault",
        "kummer-betti",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("kummer.blowup_oracle: coefficient of t^2: expected 79, got 80"));

    let o = nsbetti(&["verify", "--grid-max", "3", "--inject-fault", "dimension"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("counts.kirwan.m12"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (i, fmt) in ["json", "csv", "md"].iter().enumerate() {
        let a = dir.path().join(format!("a{i}"));
        let b = dir.path().join(format!("b{i}"));
        for p in [&a, &b] {
            let o = nsbetti(&[
                "compute",
                "--g1",
                "5",
                "--g2",
                "4",
                "--component",
                "all",
                "--format",
                fmt,
                "--output",
                p.to_str().unwrap(),
            ]);
            assert_eq!(o.status.code(), Some(0));
            assert!(o.stdout.is_empty());
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
    let a = stdout(&nsbetti(&["verify", "--grid-max", "4", "--format", "csv"]));
    let b = stdout(&nsbetti(&["verify", "--grid-max", "4", "--format", "csv"]));
    assert_eq!(a, b);
}

fn run_cached(cache_flag: Option<&Path>, env: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nsbetti"));
    cmd.args(["compute", "--g1", "6", "--g2", "5", "--component", "all"]);
    cmd.env_remove("NSBETTI_CACHE");
    if let Some(p) = cache_flag {
        cmd.arg("--cache").arg(p);
    }
    if let Some(p) = env {
        cmd.env("NSBETTI_CACHE", p);
    }
    cmd.output().unwrap()
}

#[test]
fn cache_warm_run_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cold = nsbetti(&["compute", "--g1", "6", "--g2", "5", "--component", "all"]);

    let flag_path = dir.path().join("flag.json");
    let first = run_cached(Some(&flag_path), None);
    assert!(flag_path.exists());
    let second = run_cached(Some(&flag_path), None);
    assert_eq!(stdout(&first), stdout(&cold));
    assert_eq!(stdout(&second), stdout(&cold));

    let env_path = dir.path().join("nested").join("env.json");
    let first = run_cached(None, Some(&env_path));
    assert!(env_path.exists());
    let second = run_cached(None, Some(&env_path));
    assert_eq!(stdout(&second), stdout(&cold));
    assert_eq!(stdout(&first), stdout(&cold));

    std::fs::write(&env_path, "not json").unwrap();
    let o = run_cached(None, Some(&env_path));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), stdout(&cold));
}
