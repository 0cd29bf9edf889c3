use std::path::PathBuf;
use std::process::{Command, Output};

fn romdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_romdom"))
        .args(args)
        .output()
        .expect("spawn romdom")
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn solve_reports_small_graphs() {
    let k1 = tmp_file("k1.txt", "1 0\n");
    let out = romdom(&["solve", k1.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("rdn: 1\n"));

    let c4 = tmp_file("c4.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let out = romdom(&["--format", "json", "solve", c4.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["graph"], serde_json::json!("cycle"));
    assert_eq!(report["rdn"], serde_json::json!(3));
    assert_eq!(report["nrdn"], serde_json::json!("3/4"));
    assert_eq!(report["roman"], serde_json::json!(false));
    assert_eq!(report["domination_number"], serde_json::json!(2));
}

#[test]
fn solve_large_cycle_uses_dp_and_emits_witness() {
    let mut lines = vec!["3000 3000".to_string()];
    for v in 0..2999usize {
        lines.push(format!("{v} {}", v + 1));
    }
    lines.push("0 2999".to_string());
    let big = tmp_file("c3000.txt", &(lines.join("\n") + "\n"));
    let out = romdom(&["solve", big.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("rdn: 2000\n"));
    assert!(text.contains("nrdn: 2/3\n"));
    assert!(text.contains("domination_number: n/a"));
    let witness_line = text.lines().find(|l| l.starts_with("witness: ")).unwrap();
    assert_eq!(witness_line.split_whitespace().count(), 3001);
}

#[test]
fn solve_parse_error_names_the_line() {
    let bad = tmp_file("bad.txt", "3 3\n0 1\n1 2\nnonsense\n");
    let out = romdom(&["solve", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 4"));

    let missing = romdom(&["solve", "/nonexistent/graph.txt"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn solve_dense_large_instance_exits_three() {
    let n = 17usize;
    let mut lines = vec![format!("{n} {}", n * (n - 1) / 2)];
    for u in 0..n {
        for v in u + 1..n {
            lines.push(format!("{u} {v}"));
        }
    }
    let k17 = tmp_file("k17.txt", &(lines.join("\n") + "\n"));
    let out = romdom(&["solve", k17.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn scheme_rejects_bad_depth_and_epsilon() {
    let out = romdom(&["scheme", "--epsilon", "1/10", "--depth", "31"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("multiple of 3"));

    let out = romdom(&["scheme", "--epsilon", "3/2"]);
    assert_eq!(code(&out), 2);

    let out = romdom(&["scheme", "--epsilon", "0.1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn scheme_emits_consistent_arc_list() {
    let out = romdom(&[
        "--format", "json", "scheme", "--epsilon", "1/10", "--depth", "30", "--emit-arcs",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["domination_valid"], serde_json::json!(true));
    assert_eq!(report["bound_satisfied"], serde_json::json!(true));
    let count = report["l2_arcs"].as_u64().unwrap();
    assert_eq!(report["arcs"].as_array().unwrap().len() as u64, count);
}

#[test]
fn decimal_alpha_is_rejected() {
    let out = romdom(&["--alpha", "0.618", "lower-bound", "--delta", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("rational"));
}

#[test]
fn alternate_alphas_parse() {
    let out = romdom(&["--alpha", "sqrt2m1", "scheme", "--epsilon", "1/10", "--depth", "30"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = romdom(&["--alpha", "cf:0,2,1,3", "scheme", "--epsilon", "1/10", "--depth", "30"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn verify_exit_codes_follow_the_failure_kind() {
    let overlap = tmp_file("overlap.txt", "l2: [0, 1/2)\nl1: [1/4, 3/4)\nl0: [3/4, 1)\n");
    let out = romdom(&["verify", overlap.to_str().unwrap()]);
    assert_eq!(code(&out), 5);

    let invalid = tmp_file("invalid.txt", "l2: [0, 1/100)\nl0: [1/100, 1)\n");
    let out = romdom(&["verify", invalid.to_str().unwrap(), "--beta", "1/4"]);
    assert_eq!(code(&out), 6);
    assert!(stdout(&out).contains("valid: false"));

    let garbled = tmp_file("garbled.txt", "l2: [0, 1/4)\nl9: [1/4, 1)\n");
    let out = romdom(&["verify", garbled.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn verify_accepts_full_sections_and_star_grammar() {
    let full = tmp_file("full.txt", "l2: full\n");
    let out = romdom(&["verify", full.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("measured_value: 2 "));

    let starry = tmp_file(
        "starry.txt",
        "l2: [0, -1/10+1*a)\nl0: [-1/10 + 1*a, 1)\n# trailing comment\n",
    );
    let out = romdom(&["verify", starry.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("valid: true"));
}

#[test]
fn experiments_streams_are_byte_deterministic() {
    let args = ["experiments", "parsprototo", "--trials", "20", "--seed", "9"];
    let first = romdom(&args);
    let second = romdom(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let other = romdom(&["experiments", "parsprototo", "--trials", "20", "--seed", "10"]);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn experiments_write_files_and_honor_format() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("conv.csv");
    let out = romdom(&[
        "experiments",
        "convergence",
        "--max-denominator",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("wrote 8 records"));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("experiment,alpha,index,q,rdn,"));
    assert!(csv.contains("convergence,golden,4,5,4,4/5,"));

    let json_out = romdom(&[
        "--format", "json", "experiments", "edge-measure", "--trials", "3", "--seed", "1",
    ]);
    assert_eq!(code(&json_out), 0);
    let rows: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(rows[0]["experiment"], serde_json::json!("edge_measure"));
    assert_eq!(rows[0]["lhs_exact"], rows[0]["rhs_exact"]);
}

#[test]
fn experiments_reject_unknown_kind() {
    let out = romdom(&["experiments", "frobnicate"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("expected convergence"));
}

#[test]
fn lower_bound_output_is_exact() {
    let out = romdom(&["lower-bound", "--delta", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, b"2/3\n");

    let out = romdom(&["lower-bound", "--delta", "0"]);
    assert_eq!(stdout(&out), "1\n");

    let out = romdom(&["--format", "json", "lower-bound", "--delta", "4"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["lower_bound"], serde_json::json!("2/5"));
}

#[test]
fn usage_errors_exit_two() {
    let out = romdom(&["no-such-command"]);
    assert_eq!(code(&out), 2);
    let out = romdom(&["scheme", "--no-such-flag"]);
    assert_eq!(code(&out), 2);
}
