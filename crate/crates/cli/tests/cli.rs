use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qgoa(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgoa"))
        .args(args)
        .current_dir(cwd)
        .env("QGOA_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], cwd: &Path) -> String {
    let out = qgoa(args, cwd);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn gen_mvc(dir: &Path) {
    ok(&["gen", "--kind", "mvc", "--n", "4", "--edges", "4", "--seed", "1", "--out", "inst.json"], dir);
}

#[test]
fn gen_and_solve() {
    let dir = tempfile::tempdir().unwrap();
    gen_mvc(dir.path());
    let text = fs::read_to_string(dir.path().join("inst.json")).unwrap();
    assert!(text.contains("\"mvc\""));
    let solved = ok(&["solve", "--instance", "inst.json"], dir.path());
    let mut lines = solved.lines();
    assert!(lines.next().unwrap().starts_with("optimal_value "));
    let strings: Vec<&str> = lines.collect();
    assert!(!strings.is_empty());
    assert!(strings.iter().all(|s| s.len() == 4 && s.chars().all(|c| c == '0' || c == '1')));
}

#[test]
fn gen_to_stdout_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gen", "--kind", "portfolio", "--n", "5", "--edges", "6", "--seed", "7"];
    assert_eq!(ok(&args, dir.path()), ok(&args, dir.path()));
}

#[test]
fn run_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    gen_mvc(dir.path());
    let stdout = ok(
        &["run", "--instance", "inst.json", "--alg", "both", "--layers", "2", "--max-iters", "40", "--out", "r"],
        dir.path(),
    );
    assert_eq!(stdout.lines().count(), 3);
    let r = dir.path().join("r");
    assert_eq!(fs::read_to_string(r.join("runs.jsonl")).unwrap().lines().count(), 2);
    let summary = fs::read_to_string(r.join("summary.csv")).unwrap();
    assert_eq!(summary, stdout);
    assert!(r.join("traces/qgoa_L2_s0.csv").exists());
    assert!(r.join("traces/qaoa_L2_s0.csv").exists());
}

#[test]
fn sweep_is_reproducible_and_report_regenerates_it() {
    let dir = tempfile::tempdir().unwrap();
    gen_mvc(dir.path());
    let sweep = |out: &str| {
        ok(
            &["sweep", "--instance", "inst.json", "--layers", "1..2", "--seeds", "2", "--max-iters", "30", "--out", out],
            dir.path(),
        )
    };
    let first = sweep("a");
    let second = sweep("b");
    assert_eq!(first, second);
    assert!(first.contains("best qgoa layer"));
    let a = fs::read_to_string(dir.path().join("a/summary.csv")).unwrap();
    assert_eq!(a, fs::read_to_string(dir.path().join("b/summary.csv")).unwrap());
    assert_eq!(a.lines().count(), 1 + 2 * 2 * 2);

    ok(&["report", "--runs", "a/runs.jsonl", "--out", "c"], dir.path());
    assert_eq!(a, fs::read_to_string(dir.path().join("c/summary.csv")).unwrap());
    assert_eq!(
        fs::read_to_string(dir.path().join("a/traces/qaoa_L1_s1.csv")).unwrap(),
        fs::read_to_string(dir.path().join("c/traces/qaoa_L1_s1.csv")).unwrap()
    );
}

#[test]
fn scale_two_qubit_counts_grow() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["scale", "--sizes", "4..7", "--max-iters", "10", "--out", "s/scale.csv"], dir.path());
    let table = fs::read_to_string(dir.path().join("s/scale.csv")).unwrap();
    let mut lines = table.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let n2 = header.iter().position(|h| *h == "n2").unwrap();
    for alg in ["qgoa", "qaoa"] {
        let counts: Vec<usize> = table
            .lines()
            .skip(1)
            .filter(|l| l.starts_with(alg))
            .map(|l| l.split(',').nth(n2).unwrap().parse().unwrap())
            .collect();
        assert_eq!(counts.len(), 4);
        assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{alg}: {counts:?}");
    }
}

#[test]
fn probe_without_aggregation_is_local() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(&["probe-locality", "--eta", "0"], dir.path());
    let rows: Vec<Vec<f64>> =
        out.lines().skip(1).map(|l| l.split(',').skip(1).map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                assert!(v.abs() < 1e-8, "d<M{}>/dx{} = {v}", i + 1, j + 1);
            }
        }
    }
}

#[test]
fn bad_input_fails_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let out = qgoa(&["gen", "--kind", "mvc", "--n", "3", "--edges", "9"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("at most 3"));

    fs::write(dir.path().join("broken.json"), "{\"n\": 2,\n  \"kind\": oops}").unwrap();
    let out = qgoa(&["solve", "--instance", "broken.json"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json"));

    let out = qgoa(&["sweep", "--instance", "missing.json", "--layers", "3..1"], dir.path());
    assert!(!out.status.success());
}
