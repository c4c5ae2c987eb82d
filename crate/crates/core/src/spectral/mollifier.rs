use std::sync::Arc;

use rustfft::num_complex::Complex64;

use super::{torus_delta, Grid, PhysicalField, SpectralField};
use crate::error::{LabError, Result};
use crate::TWO_PI;

/// Unnormalised radial bump `exp(-1/(1 - r²))` on `r < 1`, zero outside.
pub fn bump_profile(r: f64) -> f64 {
    if r < 1.0 {
        (-1.0 / (1.0 - r * r)).exp()
    } else {
        0.0
    }
}

/// Bump of radius `radius` centred at `center`, sampled on the grid with the
/// torus metric and normalised so that `Σ ρ h² = 1` exactly.
pub fn sample_bump(grid: &Arc<Grid>, center: (f64, f64), radius: f64) -> PhysicalField {
    let mut values = vec![0.0; grid.len()];
    add_bump(&mut values, grid, center, radius, 1.0);
    PhysicalField::new(grid.clone(), values).expect("sized by grid")
}

/// Add `weight · ρ_radius(· - center)` to `values`, with the sampled bump
/// normalised to unit discrete mass before scaling.
pub(crate) fn add_bump(values: &mut [f64], grid: &Grid, center: (f64, f64), radius: f64, weight: f64) {
    let n = grid.n() as i64;
    let h = grid.h();
    let reach = ((radius / h).ceil() as i64 + 1).min(n / 2);
    let span = (2 * reach + 1).min(n);
    let ci = (center.0 / h).round() as i64 - reach;
    let cj = (center.1 / h).round() as i64 - reach;
    let mut local = Vec::with_capacity((span * span) as usize);
    let mut mass = 0.0;
    for di in 0..span {
        let i = (ci + di).rem_euclid(n) as usize;
        let dx = torus_delta(grid.coord(i), center.0);
        for dj in 0..span {
            let j = (cj + dj).rem_euclid(n) as usize;
            let dy = torus_delta(grid.coord(j), center.1);
            let v = bump_profile((dx * dx + dy * dy).sqrt() / radius);
            mass += v;
            local.push((i * n as usize + j, v));
        }
    }
    mass *= grid.spec().cell_area();
    if mass > 0.0 {
        let s = weight / mass;
        for (idx, v) in local {
            values[idx] += v * s;
        }
    }
}

/// Convolution with `ρ_α(x) = α⁻² ρ(x/α)`, applied spectrally.
#[derive(Debug, Clone)]
pub struct Mollifier {
    grid: Arc<Grid>,
    alpha: f64,
    /// `(2π)² ρ̂_α(k)`; real because the sampled kernel is even.
    multiplier: Vec<f64>,
    peak: f64,
    support: usize,
}

impl Mollifier {
    /// Kernel of radius `alpha`; requires `2h ≤ alpha ≤ π`.
    pub fn new(grid: &Arc<Grid>, alpha: f64) -> Result<Self> {
        let limit = 2.0 * grid.h();
        if !(alpha >= limit * (1.0 - 1e-12)) {
            return Err(LabError::UnderResolved {
                what: "mollifier radius",
                value: alpha,
                limit,
            });
        }
        if alpha > std::f64::consts::PI {
            return Err(LabError::Domain(format!(
                "mollifier radius {alpha} exceeds half the torus"
            )));
        }
        Ok(Self::new_unchecked(grid, alpha))
    }

    /// Same kernel without the resolution check. Below `h` the kernel
    /// degenerates to the identity.
    pub(crate) fn new_unchecked(grid: &Arc<Grid>, alpha: f64) -> Self {
        let kernel = sample_bump(grid, (0.0, 0.0), alpha);
        let peak = kernel.max();
        let support = kernel.values().iter().filter(|&&v| v > 0.0).count();
        let hat = kernel.to_spectral();
        let multiplier = hat
            .coeffs()
            .iter()
            .map(|c| c.re * TWO_PI * TWO_PI)
            .collect();
        Mollifier {
            grid: grid.clone(),
            alpha,
            multiplier,
            peak,
            support,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `max ρ_α`.
    pub fn peak(&self) -> f64 {
        self.peak
    }

    /// Number of nodes where the sampled kernel is positive.
    pub fn support_nodes(&self) -> usize {
        self.support
    }

    /// Sup-over-mean constant `max ρ_α / mean_{supp} ρ_α`.
    ///
    /// With it, `‖ρ_α * ω‖_∞ ≤ κ C(α) / |supp ρ_α|` where `C` is the
    /// concentration function.
    pub fn kappa(&self) -> f64 {
        self.peak * self.support as f64 * self.grid.spec().cell_area()
    }

    /// Area of the kernel support on the grid.
    pub fn support_area(&self) -> f64 {
        self.support as f64 * self.grid.spec().cell_area()
    }

    /// Spectral multiplier at signed wavenumber `(k1, k2)`, i.e. the discrete
    /// transform `Σ_x ρ_α(x) e^{-ik·x} h²`.
    pub fn transform_at(&self, k1: i64, k2: i64) -> f64 {
        let spec = self.grid.spec();
        self.multiplier[spec.index_of(k1) * spec.n + spec.index_of(k2)]
    }

    pub fn apply(&self, field: &SpectralField) -> SpectralField {
        let coeffs = field
            .coeffs()
            .iter()
            .zip(&self.multiplier)
            .map(|(c, m)| c * *m)
            .collect::<Vec<Complex64>>();
        SpectralField::from_coeffs(field.grid().clone(), coeffs).expect("sized by grid")
    }
}

/// `field * ρ_α`; errors when `alpha < 2h`.
pub fn mollify(field: &SpectralField, alpha: f64) -> Result<SpectralField> {
    Ok(Mollifier::new(field.grid(), alpha)?.apply(field))
}
