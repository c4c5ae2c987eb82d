//! Fourier representation of periodic scalar fields on `[0, 2π)²`.

mod field;
mod grid;
mod mollifier;
mod velocity;

#[cfg(test)]
pub(crate) mod testing;

pub use field::{Norms, PhysicalField, SpectralField};
pub use grid::{Direction, Grid, GridSpec};
pub(crate) use mollifier::add_bump;
pub use mollifier::{bump_profile, mollify, sample_bump, Mollifier};
pub(crate) use velocity::biot_savart_unchecked;
pub use velocity::{biot_savart, energy_from_vorticity, velocity_gradient_sq, VelocityField};

/// Torus distance between two coordinates along one axis.
#[inline]
pub fn torus_delta(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(crate::TWO_PI);
    d.min(crate::TWO_PI - d)
}
