use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn seip(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seip"))
        .args(args)
        .current_dir(dir)
        .env_remove("SEIP_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// The single result row printed by `solve`, as header-keyed fields.
fn result_field(o: &Output, name: &str) -> String {
    let out = stdout(o);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let row: Vec<&str> = lines.next().unwrap().split('\t').collect();
    row[header.iter().position(|h| *h == name).unwrap()].to_string()
}

const E1: &str = r#"{
  "n": 3,
  "name": "E1",
  "sets": [
    {"elements": [1, 2], "weight": 1},
    {"elements": [3], "weight": 1},
    {"elements": [1, 2, 3], "weight": "5/2"}
  ]
}
"#;

fn e1_dir() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("e1.inst"), E1).unwrap();
    std::fs::write(dir.path().join("e1.inst.opt"), "{\"value\": 2}\n").unwrap();
    dir
}

#[test]
fn generate_problem_i_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let o = seip(dir.path(), &["generate", "--kind", "problem-i", "--k", "3", "--L", "4", "--epsilon", "1/100", "--out", "i.inst"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("n=12 m=16 k=3 OPT=101/25"));
    let inst = seip_core::io::read_instance(dir.path().join("i.inst")).unwrap();
    assert_eq!((inst.n(), inst.m()), (12, 16));
    let opt = std::fs::read_to_string(dir.path().join("i.inst.opt")).unwrap();
    let opt = seip_core::io::optimum_from_json(&opt, 12).unwrap();
    assert_eq!(opt.known.unwrap().sets().len(), 4);
}

#[test]
fn generate_random_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["generate", "--kind", "random-k", "--n", "12", "--m", "10", "--k", "3", "--seed", "7"];
    let a = seip(dir.path(), &args);
    let b = seip(dir.path(), &args);
    assert_eq!(code(&a), 0);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let other = seip(dir.path(), &["generate", "--kind", "random-k", "--n", "12", "--m", "10", "--k", "3", "--seed", "8"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn generate_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = seip(dir.path(), &["generate", "--kind", "problem-i", "--k", "3", "--L", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--epsilon"));
    assert_eq!(code(&seip(dir.path(), &["generate", "--kind", "problem-i", "--k", "1", "--L", "4", "--epsilon", "1/2"])), 2);
    assert_eq!(code(&seip(dir.path(), &["generate", "--kind", "nonsense"])), 2);
    assert_eq!(code(&seip(dir.path(), &["generate", "--kind", "corpus"])), 2);
}

#[test]
fn generate_whole_corpus_into_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = seip(dir.path(), &["generate", "--kind", "corpus", "--out", "corpus"]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_dir(dir.path().join("corpus")).unwrap().count(), 200);
    assert!(dir.path().join("corpus/corpus-042.inst").exists());
}

#[test]
fn solve_greedy_on_e1_with_sidecar() {
    let dir = e1_dir();
    let o = seip(dir.path(), &["solve", "--algorithm", "greedy", "--instance", "e1.inst"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result_field(&o, "cost"), "2");
    assert_eq!(result_field(&o, "opt"), "2");
    assert_eq!(result_field(&o, "ratio"), "1");
    assert_eq!(result_field(&o, "feasible"), "true");
}

#[test]
fn solve_without_optimum_leaves_ratio_empty() {
    let dir = e1_dir();
    std::fs::remove_file(dir.path().join("e1.inst.opt")).unwrap();
    let o = seip(dir.path(), &["solve", "--algorithm", "gaww", "--instance", "e1.inst"]);
    assert_eq!(code(&o), 0);
    assert_eq!(result_field(&o, "cost"), "2");
    assert_eq!(result_field(&o, "opt"), "-");
    assert_eq!(result_field(&o, "ratio"), "-");
}

#[test]
fn gseip_trace_replays_to_the_same_cost() {
    let dir = tempfile::tempdir().unwrap();
    seip(dir.path(), &["generate", "--kind", "problem-i", "--k", "3", "--L", "4", "--epsilon", "1/100", "--out", "i.inst"]);
    let o = seip(dir.path(), &["solve", "--algorithm", "gseip", "--instance", "i.inst", "--seed", "1", "--budget", "1000", "--trace", "t.csv"]);
    assert_eq!(code(&o), 0);
    let cost = result_field(&o, "cost");
    let v = seip(dir.path(), &["verify", "--instance", "i.inst", "--trace", "t.csv"]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    assert!(stdout(&v).contains(&format!("best_cost={cost}")), "{}", stdout(&v));

    // a tampered accepted record no longer replays
    let trace = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let mut lines: Vec<String> = trace.lines().map(String::from).collect();
    let last = lines.len() - 1;
    let mut cols: Vec<String> = lines[last].split('\t').map(String::from).collect();
    cols[4] = "999".into();
    lines[last] = cols.join("\t");
    std::fs::write(dir.path().join("bad.csv"), lines.join("\n")).unwrap();
    let v = seip(dir.path(), &["verify", "--instance", "i.inst", "--trace", "bad.csv"]);
    assert_eq!(code(&v), 1);
}

#[test]
fn exact_refuses_large_instances() {
    let dir = tempfile::tempdir().unwrap();
    seip(dir.path(), &["generate", "--kind", "random-k", "--n", "40", "--m", "40", "--k", "3", "--seed", "1", "--out", "big.inst"]);
    let o = seip(dir.path(), &["solve", "--algorithm", "exact", "--instance", "big.inst"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("40"));
}

#[test]
fn exact_and_evolutionary_solvers_agree_on_e1() {
    let dir = e1_dir();
    let o = seip(dir.path(), &["solve", "--algorithm", "exact", "--instance", "e1.inst"]);
    assert_eq!(result_field(&o, "cost"), "2");
    for alg in ["opo-ea", "semo", "lseip", "gseip"] {
        let o = seip(dir.path(), &["solve", "--algorithm", alg, "--instance", "e1.inst", "--seed", "3", "--budget", "20*m*n^2"]);
        assert_eq!(code(&o), 0, "{alg}");
        assert_eq!(result_field(&o, "cost"), "2", "{alg}");
        assert_eq!(result_field(&o, "steps_used"), "540", "{alg}");
        assert_eq!(result_field(&o, "seed"), "3", "{alg}");
    }
}

#[test]
fn evolutionary_solvers_need_seed_and_budget() {
    let dir = e1_dir();
    let o = seip(dir.path(), &["solve", "--algorithm", "lseip", "--instance", "e1.inst", "--seed", "1"]);
    assert_eq!(code(&o), 2);
    let o = seip(dir.path(), &["solve", "--algorithm", "lseip", "--instance", "e1.inst", "--seed", "1", "--budget", "n/2"]);
    assert_eq!(code(&o), 2);
    let o = seip(dir.path(), &["solve", "--algorithm", "simplex", "--instance", "e1.inst"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn infeasible_run_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("two.inst"),
        r#"{"n": 2, "name": "two", "sets": [{"elements": [1], "weight": 1}, {"elements": [2], "weight": 1}]}"#,
    )
    .unwrap();
    // one-bit offspring of x^∅ hold a single set, which never covers both elements
    let o = seip(dir.path(), &[
        "solve", "--algorithm", "opo-ea", "--instance", "two.inst", "--seed", "1", "--budget", "50",
        "--mutation", "one-bit", "--acceptance", "literal",
    ]);
    assert_eq!(code(&o), 3);
    assert_eq!(result_field(&o, "feasible"), "false");
    assert_eq!(result_field(&o, "cost"), "-");
}

#[test]
fn malformed_instance_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.inst"), "{\"n\": 2, \"sets\": [{\"elements\": [1], \"weight\": 1}]}").unwrap();
    let o = seip(dir.path(), &["solve", "--algorithm", "greedy", "--instance", "bad.inst"]);
    assert_eq!(code(&o), 2);
    let o = seip(dir.path(), &["solve", "--algorithm", "greedy", "--instance", "missing.inst"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn greedy_certificate_on_corpus_passes() {
    let dir = tempfile::tempdir().unwrap();
    seip(dir.path(), &["generate", "--kind", "corpus", "--index", "11", "--oracle", "--out", "c.inst"]);
    let o = seip(dir.path(), &["solve", "--algorithm", "greedy", "--instance", "c.inst", "--certificate", "cert.json"]);
    assert_eq!(code(&o), 0);
    let v = seip(dir.path(), &["verify", "--instance", "c.inst", "--certificate", "cert.json"]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    assert!(stdout(&v).contains("gap=1"));
}

#[test]
fn certificate_with_an_empty_step_fails_condition_1() {
    let dir = e1_dir();
    std::fs::write(
        dir.path().join("cert.json"),
        r#"{"gap": 1, "opt_value": "2", "ratios": ["1/2", "0", "1/2"],
            "steps": [{"plus": [0], "minus": []}, {"plus": [], "minus": []}, {"plus": [1], "minus": []}]}"#,
    )
    .unwrap();
    let v = seip(dir.path(), &["verify", "--instance", "e1.inst", "--certificate", "cert.json"]);
    assert_eq!(code(&v), 1);
    assert!(stdout(&v).contains("condition 1"), "{}", stdout(&v));
}

#[test]
fn malformed_certificate_exits_2() {
    let dir = e1_dir();
    std::fs::write(dir.path().join("cert.json"), "{\"gap\": 1").unwrap();
    let v = seip(dir.path(), &["verify", "--instance", "e1.inst", "--certificate", "cert.json"]);
    assert_eq!(code(&v), 2);
    std::fs::write(
        dir.path().join("cert.json"),
        r#"{"gap": 1, "opt_value": "2", "ratios": ["1"], "steps": [{"plus": [7], "minus": []}]}"#,
    )
    .unwrap();
    let v = seip(dir.path(), &["verify", "--instance", "e1.inst", "--certificate", "cert.json"]);
    assert_eq!(code(&v), 2);
}

#[test]
fn price_audit_on_problem_i_passes() {
    let dir = tempfile::tempdir().unwrap();
    seip(dir.path(), &["generate", "--kind", "problem-i", "--k", "3", "--L", "4", "--epsilon", "1/100", "--out", "i.inst"]);
    let o = seip(dir.path(), &["solve", "--algorithm", "greedy", "--instance", "i.inst", "--trace", "g.tsv", "--prices", "p.tsv"]);
    assert_eq!(code(&o), 0);
    let v = seip(dir.path(), &["verify", "--instance", "i.inst", "--trace", "g.tsv", "--prices", "p.tsv"]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    assert!(stdout(&v).contains("price audit: PASS sum_price=22/3 cost=22/3"), "{}", stdout(&v));

    // inflating one price breaks both the bound and the identity
    let prices = std::fs::read_to_string(dir.path().join("p.tsv")).unwrap();
    let bad: String = prices
        .lines()
        .map(|l| if l.starts_with("1\t") { "1\t5\t1\n".to_string() } else { format!("{l}\n") })
        .collect();
    assert_ne!(bad, prices);
    std::fs::write(dir.path().join("p.tsv"), bad).unwrap();
    let v = seip(dir.path(), &["verify", "--instance", "i.inst", "--trace", "g.tsv", "--prices", "p.tsv"]);
    assert_eq!(code(&v), 1);
}

#[test]
fn gaww_on_closure_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    seip(dir.path(), &["generate", "--kind", "known-opt", "--k", "3", "--L", "3", "--extra", "5", "--seed", "4", "--out", "k.inst"]);
    let o = seip(dir.path(), &["solve", "--algorithm", "gaww", "--extend", "--instance", "k.inst", "--trace", "g.tsv", "--prices", "p.tsv", "--certificate", "c.json"]);
    assert_eq!(code(&o), 0);
    let v = seip(dir.path(), &["verify", "--extend", "--instance", "k.inst", "--trace", "g.tsv", "--prices", "p.tsv", "--certificate", "c.json"]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
}

fn write_config(dir: &Path, json: &str) {
    std::fs::write(dir.join("exp.json"), json).unwrap();
}

#[test]
fn experiment_is_reproducible_and_sorted() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        r#"{"instance": {"generate": {"kind": "problem-i", "k": 3, "L": 2, "epsilon": "1/100"}},
            "algorithms": ["gseip", "greedy", {"name": "opo-ea", "options": {"mutation": "one-bit"}}],
            "runs": 3, "base_seed": 40, "budget": "10*m*n^2", "threshold": "H(k)", "output": "r.tsv"}"#,
    );
    let a = seip(dir.path(), &["experiment", "exp.json", "--jobs", "2"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let first = std::fs::read_to_string(dir.path().join("r.tsv")).unwrap();
    seip(dir.path(), &["experiment", "exp.json"]);
    let second = std::fs::read_to_string(dir.path().join("r.tsv")).unwrap();
    let strip = |s: &str| s.lines().map(|l| l.rsplit_once('\t').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&first), strip(&second));

    let rows = strip(&first);
    assert!(rows[0].starts_with("instance\talgorithm\tseed"));
    let keys: Vec<(String, String)> = rows[1..]
        .iter()
        .map(|r| {
            let c: Vec<&str> = r.split('\t').collect();
            (c[1].to_string(), c[2].to_string())
        })
        .collect();
    let expected: Vec<(String, String)> = [
        ("gseip", "40"), ("gseip", "41"), ("gseip", "42"), ("greedy", "-"),
        ("opo-ea", "40"), ("opo-ea", "41"), ("opo-ea", "42"),
    ]
    .iter()
    .map(|(a, s)| (a.to_string(), s.to_string()))
    .collect();
    assert_eq!(keys, expected);

    let summary = std::fs::read_to_string(dir.path().join("r.tsv.summary.tsv")).unwrap();
    assert_eq!(summary.lines().count(), 4);
    assert_eq!(stdout(&a), summary);
}

#[test]
fn experiment_without_algorithms_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), r#"{"instance": {"generate": {"kind": "corpus", "index": 0}}, "algorithms": [], "runs": 3}"#);
    assert_eq!(code(&seip(dir.path(), &["experiment", "exp.json"])), 2);
    write_config(dir.path(), r#"{"instance": {"generate": {"kind": "corpus", "index": 0}}, "algorithms": ["lseip"], "runs": 3}"#);
    assert_eq!(code(&seip(dir.path(), &["experiment", "exp.json"])), 2, "missing budget");
    write_config(dir.path(), r#"{"instance": {"file": "e1.inst"}, "algorithms": ["greedy"], "runs": 0}"#);
    assert_eq!(code(&seip(dir.path(), &["experiment", "exp.json"])), 2);
}

#[test]
fn experiment_failure_is_marked() {
    let dir = tempfile::tempdir().unwrap();
    seip(dir.path(), &["generate", "--kind", "random-k", "--n", "40", "--m", "40", "--k", "3", "--seed", "1", "--out", "big.inst"]);
    write_config(
        dir.path(),
        r#"{"instance": {"file": "big.inst"}, "algorithms": ["greedy", "exact", "lseip"],
            "runs": 2, "budget": "m", "oracle": false, "output": "r.tsv"}"#,
    );
    let o = seip(dir.path(), &["experiment", "exp.json"]);
    assert_eq!(code(&o), 1);
    let results = std::fs::read_to_string(dir.path().join("r.tsv")).unwrap();
    let status: Vec<&str> = results.lines().skip(1).map(|l| l.split('\t').nth(9).unwrap()).collect();
    assert_eq!(status[0], "ok");
    assert!(status[1].starts_with("failed: "), "{status:?}");
    assert!(status[2..].iter().all(|s| *s == "skipped"), "{status:?}");
}

#[test]
fn experiment_reads_instance_files_with_sidecars() {
    let dir = e1_dir();
    write_config(
        dir.path(),
        r#"{"instance": {"file": "e1.inst"}, "algorithms": ["greedy", "lseip"], "runs": 2,
            "budget": "20*m*n^2", "threshold": "1"}"#,
    );
    let o = seip(dir.path(), &["experiment", "exp.json"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("E1\tgreedy\t-\t2\t2\t2\t1\t1\ttrue\tok\t"), "{out}");
    assert!(out.contains("E1\tlseip\t2\t2\t1\t1\t1\t1\t2\t1"), "{out}");
}
