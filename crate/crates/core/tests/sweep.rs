use std::f64::consts::PI;

use vvlab_core::sweep::{run_sweep, to_json_string, SweepConfig};
use vvlab_core::LabError;

fn config(text: &str) -> SweepConfig {
    SweepConfig::from_toml_str(text).unwrap()
}

const TG: &str = "n = 32\nfamily = \"taylor_green\"\nt_end = 1.0\ndt_policy = \"fixed\"\ndt = 0.01\n";

#[test]
fn smooth_control_dissipation_is_closed_form() {
    let r = run_sweep(&config(&format!("{TG}nu_list = [0.1]\n"))).unwrap();
    let exact = PI * PI * (1.0 - (-0.4_f64).exp());
    let d = r.runs[0].dissipation.unwrap();
    assert!((d.total - exact).abs() <= 1e-6 * exact);
    assert_eq!(d.total, d.early + d.late);
    assert!(r.runs[0].flags.resolved);
    assert!(r.compactness.is_none());
    assert!(r.hypotheses.is_some());
}

#[test]
fn empty_viscosity_list_is_config_error() {
    let e = SweepConfig::from_toml_str(&format!("{TG}nu_list = []\n")).unwrap_err();
    assert!(matches!(e, LabError::Config(_)));
    let mut c = config(&format!("{TG}nu_list = [0.1]\n"));
    c.nu_list.clear();
    assert!(matches!(run_sweep(&c), Err(LabError::Config(_))));
}

#[test]
fn summary_is_deterministic_and_worker_independent() {
    let mut c = config(&format!("{TG}nu_list = [0.1, 0.05, 0.025]\n"));
    let a = to_json_string(&run_sweep(&c).unwrap());
    let b = to_json_string(&run_sweep(&c).unwrap());
    c.workers = 3;
    let w = to_json_string(&run_sweep(&c).unwrap());
    assert_eq!(a, b);
    assert_eq!(a, w);
}

#[test]
fn taylor_green_sweep_verdict() {
    let r = run_sweep(&config(&format!("{TG}nu_list = [0.1, 0.05, 0.025]\n"))).unwrap();
    let v = &r.verdict;
    assert!(v.strictly_decreasing);
    let d: Vec<f64> = v.dissipation_trend.iter().map(|x| x.unwrap()).collect();
    for (nu, d) in [0.1_f64, 0.05, 0.025].iter().zip(&d) {
        let exact = PI * PI * (1.0 - (-4.0 * nu).exp());
        assert!((d - exact).abs() < 1e-6 * exact);
    }
    assert!((v.last_over_first.unwrap() - d[2] / d[0]).abs() < 1e-15);
    // ν∫‖ω‖² over [δ, T] is π²(e^{-4νδ} - e^{-4νT}), nearly linear in ν
    assert!(v.sym2_spread.unwrap() > 3.0 && v.sym2_spread.unwrap() < 4.0);
    let c = r.compactness.as_ref().unwrap();
    assert_eq!(c.nus, vec![0.1, 0.05, 0.025]);
    let gap = PI * PI * (1.0 - (-0.1_f64).exp());
    assert!((c.energy_gap - gap).abs() < 1e-8);
    assert!(v.statement.contains("if and only if"));
}

const VORTEX: &str = "n = 32\nnu_list = [1e-3, 5e-4]\ncore = 3.0\nmass = 20.0\nstress_exponent = 1.0\n\
t_end = 4.0\nsamples = 4\ndt_policy = \"fixed\"\n";

#[test]
fn blow_up_is_recorded_and_sweep_continues() {
    let r = run_sweep(&config(&format!("{VORTEX}dt = 0.25\n"))).unwrap();
    assert!(r.runs[0].complete);
    assert!(!r.runs[1].complete);
    assert!(r.runs[1].failure.is_some());
    assert!(r.runs[1].dissipation.is_none());
    assert_eq!(r.verdict.dissipation_trend[1], None);
    assert!(!r.verdict.strictly_decreasing);
    assert!(r.compactness.is_none());
    assert!(r.hypotheses.as_ref().unwrap().stress);
}

#[test]
fn all_runs_failing_is_an_error() {
    let text = format!("{}dt = 0.5\n", VORTEX.replace("mass = 20.0", "mass = 50.0"));
    assert!(matches!(run_sweep(&config(&text)), Err(LabError::AllRunsFailed)));
}
