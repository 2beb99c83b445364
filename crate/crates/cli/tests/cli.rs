use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shatterlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shatterlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const TABLE: &str = "\
b  u0-1  l1  u1-1   l2  u2-1   l3  u3-1   l4  u4-1  l5
2     2   3
3     3   4     5    6
4     4   5    7*   9*    11   12
5     5   6    9*  12*   15*  18*    23   24
6     6   7   11*  16*   19*  27*   31*  36*    47  48
";

#[test]
fn bounds_table_golden() {
    let out = run(&["bounds", "--b-max", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), TABLE);
}

#[test]
fn bounds_json_matches_human() {
    let out = run(&["bounds", "--b-max", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for (row, line) in rows.iter().zip(TABLE.lines().skip(1)) {
        let human: Vec<String> = line.split_whitespace().skip(1).map(|c| c.trim_end_matches('*').to_string()).collect();
        let json: Vec<String> = row["entries"].as_array().unwrap().iter().map(|e| e.as_str().unwrap().to_string()).collect();
        assert_eq!(human, json);
    }
}

#[test]
fn zeta_rows_are_appended() {
    let out = run(&["bounds", "--b-max", "2", "--zeta", "4..5"]);
    let text = stdout(&out);
    assert!(out.status.success());
    assert!(text.lines().count() > 2, "{text}");
}

#[test]
fn verify_formats_agree() {
    let human = stdout(&run(&["verify", "--suite", "frankl"]));
    let tsv = stdout(&run(&["verify", "--suite", "frankl", "--format", "tsv"]));
    let json: serde_json::Value =
        serde_json::from_slice(&run(&["verify", "--suite", "frankl", "--format", "json"]).stdout).unwrap();
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(tsv.lines().count(), checks.len() + 1);
    assert_eq!(human.lines().filter(|l| l.starts_with("PASS")).count(), checks.len());
    for (line, check) in tsv.lines().skip(1).zip(checks) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols[1], check["name"].as_str().unwrap());
        assert_eq!(cols[4], check["pass"].to_string());
    }
}

#[test]
fn make_then_shatter_round_trip() {
    let path = scratch("lambda.txt");
    let made = run(&["make", "lambda", "--n", "6", "--i", "2", "--output", path.to_str().unwrap()]);
    assert!(made.status.success());
    let out = run(&["shatter", "--input", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["ranges"], 9);
    assert_eq!(v["profile"][0], 1);
}

#[test]
fn compress_writes_an_ideal() {
    let input = scratch("in.txt");
    let output = scratch("out.txt");
    std::fs::write(&input, "n 4\n1 2\n3 4\n1 3 4\n2\n").unwrap();
    let out = run(&["compress", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()]);
    assert!(out.status.success());
    let res = run(&["shatter", "--input", output.to_str().unwrap()]);
    let text = stdout(&res);
    assert!(text.contains("ranges 4"), "{text}");
    assert!(text.contains("ideal true"), "{text}");
}

#[test]
fn search_reports_witness() {
    let out = run(&["search", "graph-ex", "--n", "5", "--m", "4", "--k", "3"]);
    let text = stdout(&out);
    assert!(text.starts_with("optimum 5\nexhaustive true\n"), "{text}");
    assert!(text.contains("n 5\n1 2\n1 3\n2 4\n3 5\n4 5\n"), "{text}");
    let json: serde_json::Value = serde_json::from_slice(
        &run(&["search", "perm-extremal", "--n", "4", "--m", "4", "--k", "3", "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!(json["optimum"], 3);
}

#[test]
fn perm_phi_and_reduce() {
    let fam = scratch("f1.txt");
    run(&["make", "f1", "--n", "4", "--output", fam.to_str().unwrap()]);
    let text = stdout(&run(&["perm", "phi", "--input", fam.to_str().unwrap(), "--m", "3"]));
    assert!(text.starts_with("phi(3) 2\n"), "{text}");
    let sys = scratch("reduced.txt");
    let pairs = scratch("pairs.tsv");
    let out = run(&[
        "perm", "reduce", "--input", fam.to_str().unwrap(),
        "--out-system", sys.to_str().unwrap(), "--out-pairs", pairs.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let pairs = std::fs::read_to_string(pairs).unwrap();
    assert!(pairs.lines().all(|l| l.split('\t').count() == 3));
    let system = std::fs::read_to_string(sys).unwrap();
    assert_eq!(system.lines().count(), 1 + 3);
}

#[test]
fn failures_exit_with_two() {
    assert_eq!(run(&["shatter", "--input", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "lemma2", "--b", "6", "--n", "4"]).status.code(), Some(2));
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "n 3\n1 9\n").unwrap();
    let out = run(&["shatter", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
