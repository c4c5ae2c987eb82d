#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vvlab_core::spectral::Grid;
use vvlab_core::{PhysicalField, SpectralField};

/// Mean-free sum of random low modes `|k|∞ ≤ kmax`.
pub fn random_modes(grid: &Arc<Grid>, seed: u64, kmax: i64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for k1 in -kmax..=kmax {
        for k2 in 0..=kmax {
            if k2 == 0 && k1 <= 0 {
                continue;
            }
            let a: f64 = rng.gen_range(-1.0..1.0);
            let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            terms.push((k1 as f64, k2 as f64, a, phase));
        }
    }
    PhysicalField::from_fn(grid.clone(), |x, y| {
        terms
            .iter()
            .map(|(k1, k2, a, p)| a * (k1 * x + k2 * y + p).cos())
            .sum()
    })
    .to_spectral()
}

/// Node values drawn uniformly from `[lo, hi)`.
pub fn random_nodes(grid: &Arc<Grid>, seed: u64, lo: f64, hi: f64) -> PhysicalField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..grid.len()).map(|_| rng.gen_range(lo..hi)).collect();
    PhysicalField::new(grid.clone(), values).unwrap()
}

/// `-2 cos x cos y`.
pub fn taylor_green(grid: &Arc<Grid>) -> PhysicalField {
    PhysicalField::from_fn(grid.clone(), |x, y| -2.0 * x.cos() * y.cos())
}

pub fn rel_l2(a: &PhysicalField, b: &PhysicalField) -> f64 {
    (a - b).l2() / b.l2()
}
