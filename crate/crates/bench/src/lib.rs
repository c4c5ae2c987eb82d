//! Fixtures shared by the kernel benchmarks.

use std::f64::consts::PI;

use vvlab_core::initial_data::h2_point_vortex;
use vvlab_core::spectral::Grid;
use vvlab_core::{FlowState, PhysicalField, SpectralField};

/// Smoothed unit point vortex at the centre of an `n × n` grid.
pub fn vortex_state(n: usize, nu: f64) -> FlowState {
    let grid = Grid::get(n).expect("bench grid sizes are valid");
    let datum = h2_point_vortex(&grid, 1.0, (PI, PI), 0.5)
        .and_then(|d| d.mollified(0.2))
        .expect("vortex fits on the grid");
    FlowState::from_datum(&datum, nu).expect("datum is mean-free")
}

/// `|ω|` of [`vortex_state`], the input of the concentration function.
pub fn vortex_magnitude(n: usize) -> PhysicalField {
    vortex_state(n, 1e-3).omega().to_physical().abs()
}

/// A few low modes with nonzero mean, for raw transform timings.
pub fn modal_field(n: usize) -> SpectralField {
    let grid = Grid::get(n).expect("bench grid sizes are valid");
    PhysicalField::from_fn(grid, |x, y| 1.0 + (3.0 * x).sin() * (2.0 * y).cos() + (x + 5.0 * y).cos())
        .to_spectral()
}
