use std::path::Path;
use std::process::{Command, Output};

const COARSE: &str = "[mesh]\nfuselage = 3\nwing = 3\nvertical_tail = 1\nhorizontal_tail = 2\n";

fn fssfem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fssfem")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn eval_defaults_to_the_initial_vector() {
    let out = fssfem(&["eval"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with(char::is_numeric)).count(), 10);
    assert!(text.contains("total error %"));
}

#[test]
fn eval_reads_a_parameter_file_and_dumps_the_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(
        dir.path(),
        "p.toml",
        "rho = 2500.0\nvtp_imin = 9e-9\nl_imin = 8e-9\nl_imax = 9e-7\nl_itors = 4e-8\nr_imin = 8e-9\nr_imax = 9e-7\nr_itors = 4e-8\n",
    );
    let mesh = dir.path().join("mesh.json");
    let out = fssfem(&["eval", "--params", &params, "--dump-mesh", mesh.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(mesh).unwrap()).unwrap();
    assert_eq!(json["elements"].as_array().unwrap().len(), 12 + 24 + 4 + 4);
    assert_eq!(json["elements"][0]["rho"], 2500.0);
}

#[test]
fn run_writes_the_three_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.toml", COARSE);
    let out_dir = dir.path().join("out");
    let out = fssfem(&[
        "run", "--algo", "all", "--trials", "2", "--iters", "3", "--pop", "4", "--seed", "5", "--problem",
        "surrogate", "--config", &config, "--out", out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let trace = std::fs::read_to_string(out_dir.join("trace.csv")).unwrap();
    assert_eq!(trace.lines().count(), 1 + 4 * 2 * 3);
    assert!(trace.lines().nth(1).unwrap().starts_with("fss,5,1,"));
    assert_eq!(std::fs::read_to_string(out_dir.join("params.csv")).unwrap().lines().count(), 5);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["seeds"], serde_json::json!([5, 6]));
    assert_eq!(summary["algorithms"].as_array().unwrap().len(), 4);
}

#[test]
fn single_algorithm_run() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.toml", COARSE);
    let out_dir = dir.path().join("o");
    let out = fssfem(&[
        "run", "--algo", "pso", "--trials", "1", "--iters", "2", "--pop", "3", "--config", &config, "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pso"));
    assert_eq!(std::fs::read_to_string(out_dir.join("trace.csv")).unwrap().lines().count(), 3);
}

#[test]
fn bad_inputs_fail_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "bad.toml", "[run]\nunknown_key = 3\n");
    let out = fssfem(&["run", "--config", &config]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = fssfem(&["eval", "--params", dir.path().join("missing.toml").to_str().unwrap()]);
    assert!(!out.status.success());

    assert!(!fssfem(&["run", "--algo", "sa"]).status.success());
}
