use std::path::Path;
use std::process::Command;

use quadgl::functions::io::read_table;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quadgl").chain(args.iter().copied());
    let code = quadgl::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn planted_phase_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let table = path(dir.path(), "f.txt");
    let result = path(dir.path(), "r.json");
    let (code, out, _) = run(&[
        "--seed",
        "5",
        "gen",
        "--n",
        "10",
        "--plant",
        "quad",
        "--epsilon",
        "0.3",
        "--out",
        &table,
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["n"], 10);

    let (code, out, err) = run(&["--seed", "5", "find-quad", "--in", &table, "--out", &result]);
    assert_eq!(code, 0, "{err}");
    let found = json(&out);
    assert_eq!(found["n"], 10);
    assert!(found["correlation_estimate"].as_f64().unwrap() >= 0.1);

    let (code, out, _) = run(&["verify", "--in", &table, "--result", &result]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert!(out.contains("result-correlation"));
}

#[test]
fn exact_norm_of_a_phase_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let table = path(dir.path(), "q.bin");
    let (code, _, _) = run(&[
        "gen", "--n", "7", "--plant", "quad", "--format", "binary", "--out", &table,
    ]);
    assert_eq!(code, 0);
    assert_eq!(read_table(Path::new(&table)).unwrap().n(), 7);
    let (code, out, _) = run(&["u3", "--in", &table, "--exact"]);
    assert_eq!(code, 0);
    assert!((json(&out)["u3"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn random_signs_give_bottom() {
    let dir = tempfile::tempdir().unwrap();
    let table = path(dir.path(), "noise.txt");
    run(&[
        "--seed", "2", "gen", "--n", "10", "--plant", "noise", "--out", &table,
    ]);
    let (code, out, _) = run(&[
        "find-quad",
        "--in",
        &table,
        "--epsilon",
        "0.5",
        "--skip-gate",
        "--attempts",
        "3",
    ]);
    assert_eq!(code, 2);
    let v = json(&out);
    assert_eq!(v["result"], "bottom");
    assert_eq!(v["attempts"], 3);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let table = path(dir.path(), "f.txt");
    run(&[
        "--seed",
        "9",
        "gen",
        "--n",
        "10",
        "--plant",
        "quad",
        "--epsilon",
        "0.35",
        "--out",
        &table,
    ]);
    let a = run(&["--seed", "4", "gl", "--in", &table, "--gamma", "0.3"]);
    let b = run(&["--seed", "4", "gl", "--in", &table, "--gamma", "0.3"]);
    assert_eq!(a, b);
}

#[test]
fn decompose_reports_terms() {
    let dir = tempfile::tempdir().unwrap();
    let table = path(dir.path(), "f.txt");
    run(&[
        "--seed", "1", "gen", "--n", "10", "--plant", "quad", "--out", &table,
    ]);
    let (code, out, err) = run(&[
        "decompose",
        "--in",
        &table,
        "--finder",
        "direct",
        "--epsilon",
        "0.3",
    ]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert!(v["k"].as_u64().unwrap() >= 1);
    assert!(v["terms"][0]["phase"]["M"].is_array());
    assert!(v["residual_u3_estimate"].as_f64().unwrap() < 0.3);
}

#[test]
fn spectrum_dump_satisfies_parseval() {
    let dir = tempfile::tempdir().unwrap();
    let table = path(dir.path(), "f.txt");
    run(&[
        "gen", "--n", "6", "--plant", "average", "--codim", "2", "--out", &table,
    ]);
    let (code, out, _) = run(&["wht", "--in", &table, "--min-abs", "0"]);
    assert_eq!(code, 0);
    let sum: f64 = out
        .lines()
        .map(|l| {
            l.split_whitespace()
                .nth(1)
                .unwrap()
                .parse::<f64>()
                .unwrap()
                .powi(2)
        })
        .sum();
    assert!((sum - 1.0).abs() < 1e-9, "{sum}");
}

#[test]
fn input_errors_exit_one() {
    let (code, _, err) = run(&["u3", "--in", "/nonexistent/table.txt"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--profile", "paper", "--rho", "0.1", "bench"]).0, 1);
    let dir = tempfile::tempdir().unwrap();
    let table = path(dir.path(), "f.txt");
    run(&["gen", "--n", "6", "--plant", "noise", "--out", &table]);
    assert_eq!(run(&["u3", "--in", &table, "--n", "7"]).0, 1);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("find-quad"));
}

#[test]
fn binary_exit_status() {
    let status = Command::new(env!("CARGO_BIN_EXE_quadgl"))
        .args(["verify"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = Command::new(env!("CARGO_BIN_EXE_quadgl"))
        .args(["gen", "--n", "0", "--out", "/dev/null"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
}
