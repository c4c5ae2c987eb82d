use std::sync::{Arc, OnceLock};

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{COMPACT_PART, POSITIVE_PART};
use crate::error::{LabError, Result};
use crate::initial_data::InitialDatum;
use crate::spectral::{biot_savart, biot_savart_unchecked, Grid, SpectralField, VelocityField};

/// Vorticity and passive scalars at one time, with the velocity derived on demand.
#[derive(Debug, Clone)]
pub struct FlowState {
    pub t: f64,
    pub nu: f64,
    omega: SpectralField,
    scalars: Vec<(String, SpectralField)>,
    velocity: OnceLock<VelocityField>,
}

impl FlowState {
    /// Requires `nu > 0` and a mean-free `omega`.
    pub fn new(omega: SpectralField, nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(LabError::Config(format!("viscosity must be positive, got {nu}")));
        }
        biot_savart(&omega)?;
        let mut omega = omega;
        omega.coeffs_mut()[0] = Complex64::default();
        Ok(FlowState {
            t: 0.0,
            nu,
            omega,
            scalars: Vec::new(),
            velocity: OnceLock::new(),
        })
    }

    /// State carrying `f₀` and `Ω₀` as the scalars `"f"` and `"Omega"`.
    pub fn from_datum(datum: &InitialDatum, nu: f64) -> Result<Self> {
        FlowState::new(datum.omega0.clone(), nu)?
            .with_scalar(COMPACT_PART, datum.f0.clone())?
            .with_scalar(POSITIVE_PART, datum.big_omega0.clone())
    }

    pub fn with_scalar(mut self, name: impl Into<String>, field: SpectralField) -> Result<Self> {
        self.omega.same_grid(&field)?;
        self.scalars.push((name.into(), field));
        Ok(self)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.omega.grid()
    }

    pub fn omega(&self) -> &SpectralField {
        &self.omega
    }

    pub fn scalars(&self) -> &[(String, SpectralField)] {
        &self.scalars
    }

    pub fn scalar(&self, name: &str) -> Option<&SpectralField> {
        self.scalars.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// `u = ∇^⊥ Δ⁻¹ ω`, computed once per vorticity.
    pub fn velocity(&self) -> &VelocityField {
        self.velocity
            .get_or_init(|| biot_savart_unchecked(&self.omega, false))
    }

    /// Replace the vorticity; the cached velocity is dropped.
    pub fn set_omega(&mut self, omega: SpectralField) -> Result<()> {
        self.omega.same_grid(&omega)?;
        self.omega = omega;
        self.velocity = OnceLock::new();
        Ok(())
    }

    pub(crate) fn from_parts(t: f64, nu: f64, omega: SpectralField, scalars: Vec<(String, SpectralField)>) -> Self {
        FlowState {
            t,
            nu,
            omega,
            scalars,
            velocity: OnceLock::new(),
        }
    }

    pub fn snapshot(&self, kmax: usize) -> VorticitySnapshot {
        VorticitySnapshot::new(self.t, &self.omega, kmax)
    }
}

/// Low-wavenumber block `|k₁|, |k₂| ≤ kmax` of the vorticity, enough to
/// compare velocities across runs without keeping full states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VorticitySnapshot {
    pub t: f64,
    pub kmax: usize,
    /// Row-major over `k₁, k₂ ∈ [-kmax, kmax]`, as `(re, im)`.
    pub coeffs: Vec<(f64, f64)>,
}

impl VorticitySnapshot {
    pub fn new(t: f64, omega: &SpectralField, kmax: usize) -> Self {
        let g = omega.grid();
        // stay clear of the Nyquist line, which the velocity never sees
        let kmax = kmax.min(g.n() / 2 - 1);
        let k = kmax as i64;
        let mut coeffs = Vec::with_capacity((2 * kmax + 1).pow(2));
        for k1 in -k..=k {
            for k2 in -k..=k {
                let c = omega.coeff(k1, k2);
                coeffs.push((c.re, c.im));
            }
        }
        VorticitySnapshot { t, kmax, coeffs }
    }

    /// `‖u - u'‖_{L²}` over the shared block.
    pub fn velocity_distance(&self, other: &VorticitySnapshot) -> Result<f64> {
        if self.kmax != other.kmax {
            return Err(LabError::Config(format!(
                "snapshots differ in size: kmax {} vs {}",
                self.kmax, other.kmax
            )));
        }
        let k = self.kmax as i64;
        let mut s = 0.0;
        let mut idx = 0;
        for k1 in -k..=k {
            for k2 in -k..=k {
                let k2sq = (k1 * k1 + k2 * k2) as f64;
                if k2sq > 0.0 {
                    let (a, b) = (self.coeffs[idx], other.coeffs[idx]);
                    s += ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)) / k2sq;
                }
                idx += 1;
            }
        }
        Ok(crate::TWO_PI * s.sqrt())
    }
}
