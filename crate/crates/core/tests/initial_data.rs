mod common;

use std::f64::consts::PI;

use common::taylor_green;
use vvlab_core::diagnostics::{concentration_function, DiskMask, concentration_curve};
use vvlab_core::initial_data::{
    h2_point_vortex, lp_blob, smooth_control, validate_hypotheses, vortex_sheet, FamilySpec,
    InitialDatum,
};
use vvlab_core::spectral::Grid;
use vvlab_core::sweep::log_log_slope;
use vvlab_core::PhysicalField;

#[test]
fn point_vortex_parts() {
    let g = Grid::get(128).unwrap();
    let d = h2_point_vortex(&g, 1.0, (PI, PI), 0.2).unwrap();
    let pos = d.big_omega0.to_physical();
    assert!((pos.integral() - 1.0).abs() < 1e-10);
    assert!(pos.min() >= -1e-14 * pos.linf());
    let f = d.f0.to_physical();
    let bg = -1.0 / (4.0 * PI * PI);
    assert!(f.values().iter().all(|v| (v - bg).abs() < 1e-12));
    let w = d.omega0.to_physical();
    assert!(w.mean().abs() < 1e-14);
    // |Ω - b| integrates to about 1 - b|supp| inside the core and b(4π² - |supp|) outside
    let supp = pos.values().iter().filter(|v| **v > 1e-12 * pos.linf()).count() as f64 * g.h() * g.h();
    let expect = 2.0 - 2.0 * supp / (4.0 * PI * PI);
    assert!((w.l1() - expect).abs() < 2e-3, "{} vs {expect}", w.l1());
    assert!(d.meta.hypotheses.sign_ok);
}

#[test]
fn point_vortex_concentrates_inside_its_core() {
    let g = Grid::get(128).unwrap();
    let d = h2_point_vortex(&g, 1.0, (2.0, 4.0), 0.2).unwrap();
    let c = concentration_function(&d.omega0.to_physical().abs(), 0.2).unwrap();
    assert!(c.value >= 0.9);
}

#[test]
fn mirrored_vortices_are_mirror_images() {
    let g = Grid::get(64).unwrap();
    let n = 64;
    let a = h2_point_vortex(&g, 1.0, (PI + 0.7, PI - 1.1), 0.5).unwrap().omega0.to_physical();
    let b = h2_point_vortex(&g, 1.0, (PI - 0.7, PI + 1.1), 0.5).unwrap().omega0.to_physical();
    for i in 0..n {
        for j in 0..n {
            assert!((a.at(i, j) - b.at((n - i) % n, (n - j) % n)).abs() < 1e-12);
        }
    }
}

#[test]
fn vortex_sheet_mass_and_line_scaling() {
    let g = Grid::get(256).unwrap();
    let eps = 0.1;
    let d = vortex_sheet(&g, (PI / 2.0, PI), (1.5 * PI, PI), 1.0, eps).unwrap();
    let pos = d.big_omega0.to_physical();
    assert!((pos.integral() - PI).abs() < 1e-8);
    let radii = [0.2, 0.3, 0.45, 0.6, PI / 4.0];
    let masks: Vec<DiskMask> = radii.iter().map(|&r| DiskMask::new(&g, r).unwrap()).collect();
    let values: Vec<f64> = concentration_curve(&pos, &masks).iter().map(|c| c.value).collect();
    let slope = log_log_slope(&radii, &values).unwrap();
    assert!((0.8..=1.2).contains(&slope), "slope {slope}");
}

#[test]
fn degenerate_sheet_rejected() {
    let g = Grid::get(64).unwrap();
    assert!(vortex_sheet(&g, (1.0, 1.0), (1.0, 1.0), 1.0, 0.5).is_err());
    assert!(h2_point_vortex(&g, 1.0, (1.0, 1.0), 0.5 * g.h()).is_err());
}

#[test]
fn lp_blob_refinement() {
    let norms = |p: f64, n: usize| {
        let w = lp_blob(&Grid::get(n).unwrap(), p, 1.0, 1.0).unwrap().omega0.to_physical();
        (w.l1(), w.l2())
    };
    let (_, l2a) = norms(2.0, 128);
    let (_, l2b) = norms(2.0, 256);
    assert!((l2b / l2a - 1.0).abs() < 0.05, "p = 2: {l2a} vs {l2b}");
    let (l1a, l2a) = norms(1.1, 128);
    let (l1b, l2b) = norms(1.1, 256);
    assert!((l1b / l1a - 1.0).abs() < 0.05, "p = 1.1: {l1a} vs {l1b}");
    assert!(l2b > l2a);
}

#[test]
fn smooth_control_is_taylor_green() {
    let g = Grid::get(32).unwrap();
    let d = smooth_control(&g);
    assert!((&d.omega0.to_physical() - &taylor_green(&g)).linf() < 1e-14);
    assert_eq!(d.big_omega0.to_physical().linf(), 0.0);
}

#[test]
fn identical_family_has_zero_distances() {
    let g = Grid::get(64).unwrap();
    let d = h2_point_vortex(&g, 1.0, (PI, PI), 0.5).unwrap();
    let r = validate_hypotheses(&[d.clone(), d.clone(), d], &[1.0, 2.0]).unwrap();
    assert!(r.velocity_distance.iter().flatten().all(|v| *v == 0.0));
    assert_eq!(r.h1_proxy, 0.0);
    assert!(r.signs_ok());
    assert!(!r.stress);
}

#[test]
fn negative_dip_is_flagged() {
    let g = Grid::get(32).unwrap();
    let good = h2_point_vortex(&g, 1.0, (PI, PI), 0.8).unwrap();
    let pos = PhysicalField::from_fn(g.clone(), |x, y| 1.0 + x.cos() * y.cos() - if x < 0.2 && y < 0.2 { 3.0 } else { 0.0 });
    let bad = InitialDatum::from_parts("dip", PhysicalField::zeros(g.clone()), pos, None).unwrap();
    assert!(!bad.meta.hypotheses.sign_ok);
    let r = validate_hypotheses(&[good, bad], &[1.0]).unwrap();
    assert_eq!(r.sign_violations, vec![1]);
}

#[test]
fn bounded_compact_part_has_no_tail() {
    let g = Grid::get(64).unwrap();
    let fam: Vec<_> = [0.5, 0.25]
        .iter()
        .map(|&nu| FamilySpec::TaylorGreen.generate(&g, nu, 0.5).unwrap())
        .collect();
    let bound = fam.iter().map(|d| d.f0.to_physical().linf()).fold(0.0, f64::max);
    let r = validate_hypotheses(&fam, &[0.5, bound * 1.0001, 4.0]).unwrap();
    assert!(r.sup_tail[0] > 0.0);
    assert_eq!(r.sup_tail[1], 0.0);
    assert_eq!(r.sup_tail[2], 0.0);
}

#[test]
fn stress_mode_shrinks_the_core() {
    let g = Grid::get(128).unwrap();
    let spec = FamilySpec::PointVortex {
        mass: 1.0,
        center: (PI, PI),
        core: 0.4,
        stress_exponent: Some(0.5),
    };
    let a = spec.generate(&g, 0.01, 0.01).unwrap();
    let b = spec.generate(&g, 0.0025, 0.01).unwrap();
    assert!((b.meta.core_scale.unwrap() - 0.2).abs() < 1e-14);
    assert!(b.meta.stress);
    let r = validate_hypotheses(&[a, b], &[1.0]).unwrap();
    assert!(r.stress);
    assert!(r.velocity_norms[1] > r.velocity_norms[0]);
}
