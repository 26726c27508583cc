use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tcreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcreal"))
        .args(args)
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn tcreal_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tcreal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_four_cycle_is_pivotable() {
    let o = tcreal(&["check", "--mode", "simple", "2 2 2 2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("OkC4Pivotable"));

    let o = tcreal(&["check", "--format", "json", "2", "2", "2", "2"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["reason"], "OkC4Pivotable");
    assert_eq!(v["realizable"], true);
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&tcreal(&["check", "0 0"])), 1);
    assert_eq!(code(&tcreal(&["check", "2 x 2"])), 2);
    assert_eq!(code(&tcreal(&["check", "--mode", "bogus", "2 2"])), 2);
    assert_eq!(code(&tcreal(&["check", "--format", "dot", "2 2 2 2"])), 2);
    assert_eq!(code(&tcreal_stdin(&["check"], "\n\n")), 2);
}

#[test]
fn check_reads_lines_from_stdin_and_file() {
    let text = "3,3,3,3\n# comment\n\n2 2\n";
    let o = tcreal_stdin(&["check", "--format", "json"], text);
    assert_eq!(code(&o), 1, "one of the two sequences is not realizable");
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["reason"], "OkTwoEdgeDisjoint");
    assert_eq!(lines[1]["reason"], "NotGraphical");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seqs.txt");
    std::fs::write(&path, "4 2 2 2 2\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&tcreal(&["check", "--input", p])), 1);
    assert_eq!(
        code(&tcreal(&["check", "--mode", "multi", "--input", p])),
        0
    );
    assert_eq!(code(&tcreal(&["check", "--input", "/nonexistent/file"])), 2);
}

#[test]
fn build_k4() {
    let o = tcreal(&["build", "3 3 3 3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 4);
    let edges = v["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 6);
    assert!(edges
        .iter()
        .all(|e| e["label"].as_u64().is_some_and(|l| l >= 1)));
    // Edge-disjoint trees: every edge in exactly one of them.
    let t1 = edges.iter().filter(|e| e["tree"] == "t1").count();
    let t2 = edges.iter().filter(|e| e["tree"] == "t2").count();
    assert_eq!((t1, t2), (3, 3));
}

#[test]
fn build_multigraph_boundary() {
    let o = tcreal(&["build", "--mode", "multi", "4 2 2 2 2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "multi");
    assert_eq!(v["n"], 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    assert!(v["central_cycle"].is_array());

    assert_eq!(code(&tcreal(&["build", "4 2 2 2 2"])), 1);
}

#[test]
fn build_not_graphical() {
    let o = tcreal(&["build", "--format", "json", "1 1 1"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["reason"], "NotGraphical");
}

#[test]
fn build_rejects_several_sequences() {
    assert_eq!(code(&tcreal_stdin(&["build"], "3 3 3 3\n2 2 2 2\n")), 2);
}

#[test]
fn build_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("g.json");
    let dot = dir.path().join("g.dot");
    let o = tcreal(&["build", "5 3 3 3 3 3 3 3", "--out", json.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("one_shared"), "{}", stdout(&o));
    assert!(stdout(&o).contains("verified"));
    let o = tcreal(&[
        "build",
        "3 3 3 3 3 3 3 3",
        "--format",
        "dot",
        "-o",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph G {"));
    assert_eq!(text.matches(" -- ").count(), 12);
    assert!(text.contains("doublecircle"));

    let o = tcreal(&["build", "--no-verify", "--format", "text", "3 3 3 3"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("verified"));
}

#[test]
fn build_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&str, &str)] = &[
        ("3 3 3 3", "simple"),
        ("2 2 2 2", "simple"),
        ("3 3 3 3 3 3", "simple"),
        ("4 3 3 3 3 3 3", "simple"),
        ("3 3 3 3 3 3 3 3", "simple"),
        ("5 4 4 3 3 3 2 2", "simple"),
        ("6 6 5 4 4 3 3 3 2 2", "simple"),
        ("2 2", "multi"),
        ("3 3 2", "multi"),
        ("4 2 2 2 2", "multi"),
        ("7 3 2 2 2", "multi"),
        ("0", "simple"),
    ];
    for (i, (seq, mode)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("g{i}.json"));
        let p = path.to_str().unwrap();
        let built = tcreal(&["build", "--mode", mode, "--out", p, seq]);
        assert_eq!(code(&built), 0, "build {seq} ({mode})");
        let o = tcreal(&["verify", p]);
        assert_eq!(code(&o), 0, "verify {seq}: {}", stdout(&o));
        let o = tcreal_stdin(
            &["verify", "--format", "json"],
            &std::fs::read_to_string(&path).unwrap(),
        );
        let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn check_and_build_agree() {
    for seq in [
        "2 2 2 2",
        "0 0",
        "1 1",
        "3 3 2 2 2",
        "4 4 2 2 2 2",
        "3 3 3 3 2 2",
        "2 2 2",
        "5 1 1 1 1 1",
    ] {
        for mode in ["simple", "multi"] {
            let c = code(&tcreal(&["check", "--mode", mode, seq]));
            let b = code(&tcreal(&["build", "--mode", mode, "--format", "text", seq]));
            assert_eq!(c, b, "{seq} ({mode})");
        }
    }
}

fn c4_file(labels: [u32; 4]) -> String {
    let edges: Vec<Value> = [(0, 1), (1, 2), (2, 3), (3, 0)]
        .iter()
        .zip(labels)
        .enumerate()
        .map(|(id, (&(u, v), l))| serde_json::json!({ "id": id, "u": u, "v": v, "label": l }))
        .collect();
    serde_json::json!({ "mode": "simple", "n": 4, "edges": edges }).to_string()
}

#[test]
fn verify_reports_improper_labeling() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.json");
    std::fs::write(&path, c4_file([1, 1, 2, 2])).unwrap();
    let o = tcreal(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("both carry label"), "{}", stdout(&o));
}

#[test]
fn verify_reports_unreachable_pair() {
    // Proper and simple, but labels increasing around the cycle strand some pair.
    let o = tcreal_stdin(&["verify"], &c4_file([1, 2, 3, 4]));
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("no temporal path"), "{}", stdout(&o));
    let o = tcreal_stdin(&["verify"], &c4_file([1, 2, 1, 2]));
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn verify_rejects_malformed_files() {
    let unknown_vertex = r#"{"mode":"simple","n":3,"edges":[{"id":0,"u":0,"v":5,"label":1}]}"#;
    assert_eq!(code(&tcreal_stdin(&["verify"], unknown_vertex)), 2);
    assert_eq!(code(&tcreal_stdin(&["verify"], "not json")), 2);
    let missing = tcreal(&["verify", "/nonexistent/graph.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn oracle_sweeps() {
    let o = tcreal(&["oracle", "--n", "4", "--mode", "simple"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("all sequences agree"));
    assert_eq!(
        code(&tcreal(&["oracle", "--n", "5", "--mode", "simple"])),
        0
    );
    assert_eq!(code(&tcreal(&["oracle", "--n", "4", "--mode", "multi"])), 0);
    assert_eq!(code(&tcreal(&["oracle", "--n", "9"])), 2);
    assert_eq!(code(&tcreal(&["oracle", "--n", "6", "--mode", "multi"])), 2);
}

#[test]
fn bench_runs_small() {
    let o = tcreal(&[
        "bench",
        "--n",
        "2000",
        "--rounds",
        "1",
        "--family",
        "hub-threes",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 3);
    assert_eq!(code(&tcreal(&["bench", "--n", "4"])), 2);
}
