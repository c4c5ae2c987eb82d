//! Pseudo-spectral laboratory for the vanishing-viscosity limit of the 2D
//! incompressible Navier–Stokes equations on the torus `[0, 2π)²`.
//!
//! The crate is organised bottom-up:
//!
//! * [`spectral`]: grids, Fourier fields, derivatives, Biot–Savart, mollifiers, norms.
//! * [`solver`]: integrating-factor RK4 time stepping of vorticity and passive scalars.
//! * [`initial_data`]: point-vortex, vortex-sheet, `L^p`-blob and Taylor–Green data.
//! * [`diagnostics`]: energy/enstrophy balances, concentration function, mollifier split.
//! * [`sweep`]: viscosity sweeps, cross-viscosity reports, config files and output.
//!
//! Fourier normalisation is fixed crate-wide: for a field sampled at `n × n`
//! nodes, `f̂(k) = n⁻² Σ_x f(x) e^{-ik·x}` so that `f(x) = Σ_k f̂(k) e^{ik·x}`,
//! and Parseval reads `Σ_x |f|² h² = (2π)² Σ_k |f̂(k)|²`.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod initial_data;
pub mod solver;
pub mod spectral;
pub mod sweep;

pub use diagnostics::{DiagnosticsConfig, DiagnosticsRecord};
pub use error::{LabError, Result};
pub use initial_data::InitialDatum;
pub use solver::{DtPolicy, FlowState, SolverConfig, Trajectory};
pub use spectral::{GridSpec, PhysicalField, SpectralField, VelocityField};
pub use sweep::{SweepConfig, SweepResult};

/// Torus side length.
pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
