use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vvlab(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vvlab"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

const TAYLOR_GREEN: &str = "\
n = 32
nu_list = [0.1, 0.05]
family = \"taylor_green\"
t_end = 0.2
samples = 4
dt_policy = \"fixed\"
dt = 0.005
";

#[test]
fn sweep_then_report_reproduces_summary() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tg.toml"), TAYLOR_GREEN).unwrap();
    let out = vvlab(&["sweep", "--config", "tg.toml", "--out", "a", "--workers", "2"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["sweep.json", "traj_1e-1.csv", "traj_5e-2.csv", "dissipation_vs_nu.dat"] {
        assert!(dir.path().join("a").join(f).exists(), "{f} missing");
    }
    let out = vvlab(&["report", "--config", "a/sweep.json", "--out", "b"], dir.path());
    assert!(out.status.success());
    for f in ["sweep.json", "traj_1e-1.csv", "dissipation_vs_nu.dat"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(f)).unwrap(),
            fs::read(dir.path().join("b").join(f)).unwrap(),
            "{f} differs"
        );
    }
}

#[test]
fn worker_count_does_not_change_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tg.toml"), TAYLOR_GREEN).unwrap();
    for (w, o) in [("1", "one"), ("3", "three")] {
        let out = vvlab(&["sweep", "--config", "tg.toml", "--out", o, "--workers", w, "--format", "json"], dir.path());
        assert!(out.status.success());
    }
    assert_eq!(
        fs::read(dir.path().join("one/sweep.json")).unwrap(),
        fs::read(dir.path().join("three/sweep.json")).unwrap()
    );
    assert!(!dir.path().join("one/traj_1e-1.csv").exists());
}

#[test]
fn run_writes_single_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tg.toml"), TAYLOR_GREEN).unwrap();
    let out = vvlab(&["run", "--config", "tg.toml", "--out", "r", "--format", "csv"], dir.path());
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("r/traj_1e-1.csv")).unwrap();
    assert!(csv.starts_with("t,energy,"));
    assert!(!dir.path().join("r/traj_5e-2.csv").exists());
}

#[test]
fn oracle_and_validate_write_tables() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("o.toml"), "n = 64\nwidths = [0.5, 0.25]\nradii = [0.2, 0.4]\nsmooth = true\n").unwrap();
    let out = vvlab(&["oracle", "--config", "o.toml", "--out", "o"], dir.path());
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("o/oracle.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);

    fs::write(dir.path().join("pv.toml"), "n = 64\nnu_list = [0.01, 0.005]\ncore = 0.5\n").unwrap();
    let out = vvlab(&["validate", "--config", "pv.toml", "--out", "v"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("v/hypotheses.json").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("bad.toml"), "n = 32\nnu_list = []\nfamily = \"taylor_green\"\n").unwrap();
    assert_eq!(vvlab(&["sweep", "--config", "bad.toml"], p).status.code(), Some(1));
    fs::write(p.join("typo.toml"), format!("{TAYLOR_GREEN}colour = 1\n")).unwrap();
    assert_eq!(vvlab(&["sweep", "--config", "typo.toml"], p).status.code(), Some(1));
    assert_eq!(vvlab(&["sweep"], p).status.code(), Some(1));
    assert_eq!(vvlab(&["sweep", "--config", "missing.toml"], p).status.code(), Some(3));

    // a strong vortex with a huge fixed step diverges
    fs::write(
        p.join("blow.toml"),
        "n = 32\nnu_list = [1e-4]\ncore = 0.8\nmass = 50.0\nt_end = 4.0\nsamples = 4\n\
         dt_policy = \"fixed\"\ndt = 0.5\n",
    )
    .unwrap();
    assert_eq!(vvlab(&["sweep", "--config", "blow.toml", "--out", "x"], p).status.code(), Some(2));

    fs::write(p.join("tg.toml"), TAYLOR_GREEN).unwrap();
    fs::write(p.join("blocker"), b"").unwrap();
    assert_eq!(
        vvlab(&["sweep", "--config", "tg.toml", "--out", "blocker/sub"], p).status.code(),
        Some(3)
    );
}
