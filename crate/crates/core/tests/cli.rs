//! Drives the installed binary end to end: generate, solve, verify, bench.

use std::path::PathBuf;
use std::process::{Command, Output};

fn stcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stcut-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_solve_exact_agree() {
    let path = tmp("random.graph");
    let out = stcut(&[
        "gen", "random", "--n", "10", "--p", "0.6", "--max-w", "4", "--seed", "11", "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let report = tmp("run.toml");
    let solve = stcut(&[
        "solve",
        path.to_str().unwrap(),
        "--t",
        "10",
        "--exact-check",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(solve.status.success(), "{}", stdout(&solve));
    let text = stdout(&solve);
    assert!(text.contains("exact-check pass"), "{text}");
    let lambda_line = text.lines().find(|l| l.starts_with("lambda")).unwrap();

    let exact = stcut(&["exact", path.to_str().unwrap(), "--t", "10"]);
    assert!(exact.status.success());
    assert!(stdout(&exact).lines().any(|l| l == lambda_line));

    let report_text = std::fs::read_to_string(&report).unwrap();
    assert!(report_text.contains("format_version = 1"));
    assert!(report_text.contains("verified = true"));
}

#[test]
fn solve_rejects_bad_input() {
    let missing = stcut(&["solve", "/nonexistent.graph", "--t", "2"]);
    assert!(!missing.status.success());

    let path = tmp("bad.graph");
    std::fs::write(&path, "p 3 1 1\ne 1 9 1\n").unwrap();
    let bad = stcut(&["solve", path.to_str().unwrap(), "--t", "3"]);
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}

#[test]
fn flags_override_config_file() {
    let graph = tmp("cfg.graph");
    std::fs::write(&graph, "p 3 2 1\ne 1 2 1\ne 2 3 1\n").unwrap();
    let cfg = tmp("run.cfg");
    std::fs::write(&cfg, "eps = 0.9\n").unwrap(); // invalid on its own
    // flag overrides the bad file value, so the run succeeds
    let ok = stcut(&[
        "solve",
        graph.to_str().unwrap(),
        "--t",
        "3",
        "--config",
        cfg.to_str().unwrap(),
        "--eps",
        "0.25",
    ]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    // without the flag the file value applies and is rejected
    let bad = stcut(&[
        "solve",
        graph.to_str().unwrap(),
        "--t",
        "3",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert!(!bad.status.success());
}

#[test]
fn verify_family_and_sparsifier() {
    let fam = stcut(&["verify-family", "--n", "8"]);
    assert!(fam.status.success());
    let text = stdout(&fam);
    assert!(text.contains("positive-instances 18"), "{text}");
    assert!(text.contains("max-per-position 6"), "{text}");

    let family_file = tmp("family.graph");
    let gen = stcut(&[
        "gen", "family", "--n", "8", "--index", "1", "-o",
        family_file.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let content = std::fs::read_to_string(&family_file).unwrap();
    assert!(content.contains("o 1"), "family files carry order lines");
    let solve = stcut(&[
        "solve", family_file.to_str().unwrap(), "--s", "1", "--t", "2", "--exact-check",
    ]);
    assert!(solve.status.success());
    assert!(stdout(&solve).contains("lambda 2"));

    let graph = tmp("verify.graph");
    let gen = stcut(&[
        "gen", "random", "--n", "10", "--p", "0.7", "--max-w", "3", "--seed", "4", "-o",
        graph.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let ver = stcut(&[
        "verify-sparsifier", graph.to_str().unwrap(), "--eps", "0.25", "--trials", "3",
    ]);
    assert!(ver.status.success(), "{}", stdout(&ver));
    assert_eq!(stdout(&ver).matches(" pass ").count(), 3);
}

#[test]
fn bench_emits_csv() {
    let csv = tmp("bench.csv");
    let out = stcut(&[
        "bench", "--n", "20,30", "--w", "1,4", "--p", "0.4", "--seed", "5", "-o",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,max_w,p,seed"));
    assert_eq!(lines.count(), 4); // 2 sizes × 2 weights

    // deterministic per seed
    let csv2 = tmp("bench2.csv");
    let out = stcut(&[
        "bench", "--n", "20,30", "--w", "1,4", "--p", "0.4", "--seed", "5", "-o",
        csv2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let strip_wall = |s: &str| {
        s.lines()
            .map(|l| l.rsplit_once(',').map(|(a, _)| a.to_string()).unwrap_or_default())
            .collect::<Vec<_>>()
    };
    assert_eq!(
        strip_wall(&text),
        strip_wall(&std::fs::read_to_string(&csv2).unwrap())
    );
}
