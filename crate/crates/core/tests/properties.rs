mod common;

use common::{random_modes, random_nodes};
use proptest::prelude::*;
use vvlab_core::diagnostics::{concentration_curve, trapezoid, DiskMask};
use vvlab_core::spectral::{biot_savart, energy_from_vorticity, mollify, Grid};
use vvlab_core::{FlowState, PhysicalField};
use vvlab_core::solver::{StepOptions, Stepper};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_round_trip(seed in 0u64..1000, lo in -5.0f64..0.0, span in 0.1f64..5.0) {
        let g = Grid::get(32).unwrap();
        let f = random_nodes(&g, seed, lo, lo + span);
        let back = f.to_spectral().to_physical();
        prop_assert!((&back - &f).linf() <= 1e-13 * f.linf().max(1.0));
    }

    #[test]
    fn concentration_is_monotone_and_bounded(seed in 0u64..1000) {
        let g = Grid::get(32).unwrap();
        let f = random_nodes(&g, seed, 0.0, 1.0);
        let masks: Vec<DiskMask> = [2.0, 3.0, 5.0, 8.0]
            .iter()
            .map(|k| DiskMask::new(&g, k * g.h()).unwrap())
            .collect();
        let c = concentration_curve(&f, &masks);
        for w in c.windows(2) {
            prop_assert!(w[1].value >= w[0].value - 1e-12);
        }
        prop_assert!(c.iter().all(|x| x.value >= 0.0));
        prop_assert!(c.last().unwrap().value <= f.l1() * (1.0 + 1e-12));
    }

    #[test]
    fn mollifier_obeys_young(seed in 0u64..1000, alpha in 0.4f64..1.5) {
        let g = Grid::get(32).unwrap();
        let f = random_nodes(&g, seed, -1.0, 1.0);
        let out = mollify(&f.to_spectral(), alpha).unwrap().to_physical();
        prop_assert!(out.l1() <= f.l1() * (1.0 + 1e-12));
        prop_assert!(out.l2() <= f.l2() * (1.0 + 1e-12));
        prop_assert!(out.linf() <= f.linf() * (1.0 + 1e-12));
    }

    #[test]
    fn velocity_is_divergence_free(seed in 0u64..1000, kmax in 1i64..6) {
        let g = Grid::get(32).unwrap();
        let w = random_modes(&g, seed, kmax);
        let u = biot_savart(&w).unwrap();
        prop_assert!(u.divergence_defect() < 1e-13 * w.l2_sq().sqrt().max(1.0));
        let e = energy_from_vorticity(&w);
        prop_assert!((u.kinetic_energy() - e).abs() <= 1e-12 * e.max(1e-300));
    }

    #[test]
    fn inviscid_step_conserves_energy_and_mean(seed in 0u64..1000) {
        let g = Grid::get(32).unwrap();
        let w = random_modes(&g, seed, 2).scale(0.2);
        let nu = 1e-12;
        let s = FlowState::new(w, nu).unwrap();
        let e0 = s.velocity().kinetic_energy();
        let mut st = Stepper::new(g.clone(), nu, StepOptions::default());
        let mut s1 = s.clone();
        for _ in 0..5 {
            s1 = st.step(&s1, 0.01).unwrap();
        }
        prop_assert_eq!(s1.omega().mean(), 0.0);
        // dealiasing and time error only; no energy is created
        prop_assert!(s1.velocity().kinetic_energy() <= e0 * (1.0 + 1e-9));
    }

    #[test]
    fn trapezoid_is_additive(ys in prop::collection::vec(-10.0f64..10.0, 3..30), cut in 1usize..29) {
        let ts: Vec<f64> = (0..ys.len()).map(|k| k as f64 * 0.1).collect();
        let cut = cut.min(ys.len() - 1);
        let whole = trapezoid(&ts, &ys);
        let parts = trapezoid(&ts[..=cut], &ys[..=cut]) + trapezoid(&ts[cut..], &ys[cut..]);
        prop_assert!((whole - parts).abs() <= 1e-12 * (1.0 + whole.abs()));
    }

    #[test]
    fn abs_field_has_l1_of_field(seed in 0u64..1000) {
        let g = Grid::get(16).unwrap();
        let f: PhysicalField = random_nodes(&g, seed, -2.0, 2.0);
        prop_assert!((f.abs().integral() - f.l1()).abs() < 1e-12);
    }
}
