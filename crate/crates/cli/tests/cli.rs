use std::path::Path;
use std::process::{Command, Output};

fn hexsnow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexsnow")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&hexsnow(&["--help"])), 0);
    assert_eq!(code(&hexsnow(&["--version"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&hexsnow(&[])), 1);
    assert_eq!(code(&hexsnow(&["frobnicate"])), 1);
    assert_eq!(code(&hexsnow(&["simulate", "--beta", "abc"])), 1);
    assert_eq!(code(&hexsnow(&["simulate", "--beta", "1.5"])), 1);
    assert_eq!(code(&hexsnow(&["simulate", "--preset", "nope"])), 1);
    assert_eq!(code(&hexsnow(&["simulate", "--set", "colour=red"])), 1);
    assert_eq!(code(&hexsnow(&["simulate", "--render-px", "16"])), 1);
}

#[test]
fn runtime_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&hexsnow(&["analyze", path(&missing)])), 2);
    let garbage = dir.path().join("garbage.txt");
    std::fs::write(&garbage, "not a trace\n").unwrap();
    assert_eq!(code(&hexsnow(&["analyze", path(&garbage)])), 2);
    assert_eq!(code(&hexsnow(&["render", path(&garbage)])), 2);
}

#[test]
fn preset_sets_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let res = hexsnow(&["simulate", "--preset", "fig7", "--radius", "12", "--out-dir", path(&out)]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let trace = std::fs::read_to_string(out.join("trace.txt")).unwrap();
    assert!(trace.lines().any(|l| l == "beta=0.35"), "{trace}");
    assert!(trace.lines().any(|l| l == "radius=12"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, format!("preset=fig7\nbeta=0.5\nradius=30\nout_dir={}\nemit.image=false\n", path(&out))).unwrap();
    let res = hexsnow(&["simulate", "--config", path(&cfg), "--radius", "10"]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let trace = std::fs::read_to_string(out.join("trace.txt")).unwrap();
    assert!(trace.lines().any(|l| l == "beta=0.5"));
    assert!(trace.lines().any(|l| l == "radius=10"));
    assert!(!out.join("crystal.pgm").exists());
}

#[test]
fn analyze_reproduces_simulate_tables() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("sim");
    let b = dir.path().join("again");
    let res = hexsnow(&["simulate", "--radius", "20", "--beta", "0.35", "--out-dir", path(&a)]);
    assert_eq!(code(&res), 0);
    let res = hexsnow(&["analyze", path(&a.join("trace.txt")), "--out-dir", path(&b)]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    for name in ["events.csv", "latency.csv", "directions.csv", "tips.csv", "envelope.csv"] {
        assert_eq!(std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn sequential_and_parallel_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("par");
    let b = dir.path().join("seq");
    assert_eq!(code(&hexsnow(&["simulate", "--radius", "15", "--epsilon", "0.05", "--out-dir", path(&a)])), 0);
    assert_eq!(code(&hexsnow(&["simulate", "--radius", "15", "--epsilon", "0.05", "--sequential", "--out-dir", path(&b)])), 0);
    for name in ["trace.txt", "state.txt", "crystal.pgm"] {
        assert_eq!(std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn render_writes_a_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let run = dir.path().join("run");
    assert_eq!(code(&hexsnow(&["simulate", "--radius", "10", "--out-dir", path(&run)])), 0);
    let img = dir.path().join("small.pgm");
    let res = hexsnow(&["render", path(&run.join("state.txt")), "--out", path(&img), "--px", "64"]);
    assert_eq!(code(&res), 0);
    let bytes = std::fs::read(&img).unwrap();
    assert!(bytes.starts_with(b"P5\n64 64\n255\n"));
    assert_eq!(code(&hexsnow(&["render", path(&run.join("state.txt")), "--px", "8"])), 1);
}

#[test]
fn line_model_table() {
    let res = hexsnow(&["simulate-1d", "--preset", "fig4", "--n", "20"]);
    assert_eq!(code(&res), 0);
    let text = String::from_utf8(res.stdout).unwrap();
    assert!(text.starts_with("k,B,T,L,L_hat,delta_s_min,delta_s_hat\n"));
    assert!(text.lines().count() > 10);
    assert_eq!(code(&hexsnow(&["simulate-1d", "--beta", "0"])), 1);
}

#[test]
fn sweep_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep");
    let res = hexsnow(&[
        "sweep", "--radius", "8", "--sweep-beta", "0.35,0.4", "--sweep-epsilon", "0,0.01", "--out-dir", path(&out),
    ]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 5);
}
