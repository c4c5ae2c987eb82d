//! Seeded random fields for unit tests.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;

use super::{Grid, PhysicalField, SpectralField};

/// Mean-zero Hermitian field with random coefficients on `1 ≤ max(|k1|,|k2|) ≤ kmax`.
pub fn random_band_limited(grid: &Arc<Grid>, seed: u64, kmax: i64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = Vec::new();
    for k1 in 0..=kmax {
        for k2 in -kmax..=kmax {
            if k1 == 0 && k2 <= 0 {
                continue;
            }
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            modes.push((k1, k2, c));
        }
    }
    SpectralField::from_modes(grid.clone(), &modes)
}

/// Uniform random node values in `[lo, hi)`.
pub fn random_nodes(grid: &Arc<Grid>, seed: u64, lo: f64, hi: f64) -> PhysicalField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..grid.len()).map(|_| rng.gen_range(lo..hi)).collect();
    PhysicalField::new(grid.clone(), values).unwrap()
}
