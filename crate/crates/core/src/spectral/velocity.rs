use rustfft::num_complex::Complex64;

use super::{PhysicalField, SpectralField};
use crate::error::{LabError, Result};
use crate::TWO_PI;

/// Divergence-free velocity `(u₁, u₂)` stored spectrally.
///
/// The `(0, 0)` coefficient of each component is the mean flow; it is zero
/// unless set explicitly with [`VelocityField::with_mean`].
#[derive(Debug, Clone)]
pub struct VelocityField {
    pub u1: SpectralField,
    pub u2: SpectralField,
}

impl VelocityField {
    pub fn with_mean(mut self, m1: f64, m2: f64) -> Self {
        self.u1.coeffs_mut()[0] = Complex64::new(m1, 0.0);
        self.u2.coeffs_mut()[0] = Complex64::new(m2, 0.0);
        self
    }

    pub fn mean(&self) -> (f64, f64) {
        (self.u1.mean(), self.u2.mean())
    }

    pub fn to_physical(&self) -> (PhysicalField, PhysicalField) {
        SpectralField::to_physical_pair(&self.u1, &self.u2)
    }

    /// `max_k |k₁ û₁(k) + k₂ û₂(k)|`.
    pub fn divergence_defect(&self) -> f64 {
        let g = self.u1.grid();
        let n = g.n();
        let (a, b) = (self.u1.coeffs(), self.u2.coeffs());
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let idx = i * n + j;
                worst = worst.max((a[idx] * g.k(i) + b[idx] * g.k(j)).norm());
            }
        }
        worst
    }

    /// `‖u‖²_{L²}`.
    pub fn l2_sq(&self) -> f64 {
        self.u1.l2_sq() + self.u2.l2_sq()
    }

    /// `‖∇u‖²_{L²}` summed over both components.
    pub fn grad_sq(&self) -> f64 {
        self.u1.h1_semi_sq() + self.u2.h1_semi_sq()
    }

    /// Kinetic energy `½ ∫ |u|²`.
    pub fn kinetic_energy(&self) -> f64 {
        0.5 * self.l2_sq()
    }

    pub fn scale(&self, s: f64) -> VelocityField {
        VelocityField {
            u1: self.u1.scale(s),
            u2: self.u2.scale(s),
        }
    }

    /// `‖u - v‖_{L²}`.
    pub fn distance(&self, other: &VelocityField) -> f64 {
        ((&self.u1 - &other.u1).l2_sq() + (&self.u2 - &other.u2).l2_sq()).sqrt()
    }
}

/// Relative size of the mean below which a vorticity counts as mean-free.
const MEAN_TOL: f64 = 1e-10;

/// Velocity `u = ∇^⊥ Δ⁻¹ ω`, i.e. `û₁ = i k₂ ω̂ / |k|²`, `û₂ = -i k₁ ω̂ / |k|²`.
///
/// Nyquist lines are dropped (first-order derivative). A vorticity with a
/// nonzero mean has no periodic stream function and is rejected.
pub fn biot_savart(omega: &SpectralField) -> Result<VelocityField> {
    let scale = omega.coeffs().iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
    if omega.mean().abs() > MEAN_TOL * scale {
        return Err(LabError::Invariant(format!(
            "vorticity must have zero mean on the torus, got mean {:e}",
            omega.mean()
        )));
    }
    Ok(biot_savart_unchecked(omega, false))
}

/// Biot–Savart without the mean check; optionally restricted to the 2/3 band.
pub(crate) fn biot_savart_unchecked(omega: &SpectralField, dealias: bool) -> VelocityField {
    let g = omega.grid().clone();
    let n = g.n();
    let w = omega.coeffs();
    let mut a = vec![Complex64::default(); n * n];
    let mut b = vec![Complex64::default(); n * n];
    for i in 0..n {
        if g.is_nyquist(i) || (dealias && !g.keeps(i)) {
            continue;
        }
        let k1 = g.k(i);
        for j in 0..n {
            if g.is_nyquist(j) || (dealias && !g.keeps(j)) || (i == 0 && j == 0) {
                continue;
            }
            let k2 = g.k(j);
            let idx = i * n + j;
            let q = w[idx] / (k1 * k1 + k2 * k2);
            a[idx] = Complex64::new(-k2 * q.im, k2 * q.re);
            b[idx] = Complex64::new(k1 * q.im, -k1 * q.re);
        }
    }
    VelocityField {
        u1: SpectralField::from_coeffs(g.clone(), a).expect("sized by grid"),
        u2: SpectralField::from_coeffs(g, b).expect("sized by grid"),
    }
}

/// Kinetic energy of the velocity induced by `omega`, `½ (2π)² Σ_{k≠0} |ω̂|²/|k|²`
/// with Nyquist lines excluded as in [`biot_savart`].
pub fn energy_from_vorticity(omega: &SpectralField) -> f64 {
    let g = omega.grid();
    let n = g.n();
    let w = omega.coeffs();
    let mut s = 0.0;
    for i in 0..n {
        if g.is_nyquist(i) {
            continue;
        }
        for j in 0..n {
            if g.is_nyquist(j) || (i == 0 && j == 0) {
                continue;
            }
            s += w[i * n + j].norm_sqr() / (g.k(i) * g.k(i) + g.k(j) * g.k(j));
        }
    }
    0.5 * TWO_PI * TWO_PI * s
}

/// `‖∇u‖²_{L²}` of the velocity induced by `omega`, computed from `omega`
/// directly: `(2π)² Σ |ω̂|²` over the modes [`biot_savart`] keeps.
pub fn velocity_gradient_sq(omega: &SpectralField) -> f64 {
    let g = omega.grid();
    let n = g.n();
    let w = omega.coeffs();
    let mut s = 0.0;
    for i in 0..n {
        if g.is_nyquist(i) {
            continue;
        }
        for j in 0..n {
            if !g.is_nyquist(j) {
                s += w[i * n + j].norm_sqr();
            }
        }
    }
    TWO_PI * TWO_PI * s
}
