use std::path::{Path, PathBuf};

use bigcycle_cli::run_with;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bigcycle").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

const K33: &str = "6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";

#[test]
fn solve_k33_json() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "k33.txt");
    std::fs::write(&f, K33).unwrap();
    let (code, out, _) = run(&["solve", s(&f), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["cycles"], 1);
    assert_eq!(v["edges"], 6);
    assert_eq!(v["bound_cycles"], "6/7");
    assert_eq!(v["ok"], true);
}

#[test]
fn gen_solve_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let (g, mg, tr) = (p(&dir, "g.txt"), p(&dir, "mg.txt"), p(&dir, "trace.jsonl"));
    assert_eq!(run(&["gen", "--m", "30", "--seed", "5", "--out", s(&g)]).0, 0);
    let (code, out, _) = run(&["solve", s(&g), "--json", "--euler", "--out", s(&mg), "--trace", s(&tr)]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    let edges = lines[0]["edges"].as_u64().unwrap() as usize;
    assert_eq!(lines[1]["walk"].as_array().unwrap().len(), edges + 1);
    for l in std::fs::read_to_string(&tr).unwrap().lines() {
        serde_json::from_str::<serde_json::Value>(l).unwrap();
    }

    let (code, out, _) = run(&["verify", s(&g), s(&mg)]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("valid"));

    // swap one multigraph edge for a non-edge, keeping the header consistent
    let text = std::fs::read_to_string(&mg).unwrap();
    let mut rows: Vec<String> = text.lines().map(String::from).collect();
    rows[1] = "0 1".into();
    std::fs::write(&mg, rows.join("\n") + "\n").unwrap();
    let (code, out, _) = run(&["verify", s(&g), s(&mg)]);
    assert_eq!(code, 1);
    assert!(out.contains("violation (a)"));
    assert!(out.contains("violation (b)"));
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--model", "kreg", "--m", "12", "--k", "4", "--seed", "9"]).1;
    let b = run(&["gen", "--model", "kreg", "--m", "12", "--k", "4", "--seed", "9"]).1;
    assert_eq!(a, b);
    assert!(a.starts_with("24 48\n"));
    assert_eq!(run(&["gen", "--model", "kreg", "--m", "12"]).0, 2);
}

#[test]
fn oracle_small_and_large() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "k33.txt");
    std::fs::write(&f, K33).unwrap();
    let (code, out, _) = run(&["oracle", s(&f)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["min_cycles"], 1);
    assert_eq!(v["matchings_enumerated"], 6);
    let g = p(&dir, "big.txt");
    run(&["gen", "--m", "30", "--out", s(&g)]);
    assert_eq!(run(&["oracle", s(&g)]).0, 2);
}

#[test]
fn bench_summary_and_csv() {
    let dir = TempDir::new().unwrap();
    let csv = p(&dir, "b.csv");
    let (code, out, _) = run(&["bench", "--m-range", "7:40:11", "--count", "3", "--seed", "2", "--csv", s(&csv)]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 13);
    assert!(lines[..12].iter().all(|l| l["ok"] == true));
    let ns: Vec<u64> = lines[..12].iter().map(|l| l["n"].as_u64().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    let summary = &lines[12]["summary"];
    assert_eq!(summary["instances"], 12);
    assert_eq!(summary["runtime"].as_array().unwrap().len(), 4);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("instance,n,k,cycles,edges,bound_cycles,bound_edges,elapsed_ms,ok\n"));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn bench_k_regular() {
    let (code, out, _) = run(&["bench", "--m-range", "8:12:4", "--count", "2", "--k", "5"]);
    assert_eq!(code, 0);
    assert!(out.lines().take(4).all(|l| l.contains("\"k\":5")));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["frob"]).0, 2);
    assert_eq!(run(&["bench", "--m-range", "9:3"]).0, 2);
    assert_eq!(run(&["solve", "/nonexistent/graph.txt"]).0, 2);
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "bad.txt");
    std::fs::write(&f, "4 1\n0 4\n").unwrap();
    let (code, _, err) = run(&["solve", s(&f)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"));
    // a 4-cycle is not cubic
    std::fs::write(&f, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert_eq!(run(&["solve", s(&f), "--k", "3"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("bench"));
}
