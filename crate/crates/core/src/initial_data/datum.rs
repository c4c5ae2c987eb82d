use std::sync::Arc;

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::spectral::{Grid, PhysicalField, SpectralField};

/// Grid-level certificate of the decomposition, sign and mean constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    /// `max |f₀ + Ω₀ - ω₀|` at the nodes.
    pub decomposition_defect: f64,
    /// `min Ω₀` at the nodes.
    pub min_positive_part: f64,
    /// Mean of `ω₀` before the mean-zero projection.
    pub raw_mean: f64,
    pub sign_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatumMeta {
    pub family: String,
    /// `‖ω₀‖_{L¹}` on the grid.
    pub total_mass: f64,
    /// Core or thickness scale `ε₀`, when the family has one.
    pub core_scale: Option<f64>,
    /// Set when the core shrinks with `ν`, which breaks the uniform energy bound.
    pub stress: bool,
    pub hypotheses: HypothesisFlags,
}

/// Initial vorticity `ω₀ = f₀ + Ω₀` with `Ω₀ ≥ 0` and `ω₀` mean-free.
#[derive(Debug, Clone)]
pub struct InitialDatum {
    pub omega0: SpectralField,
    /// Weakly compact part `f₀`.
    pub f0: SpectralField,
    /// Non-negative part `Ω₀`.
    pub big_omega0: SpectralField,
    pub meta: DatumMeta,
}

impl InitialDatum {
    /// Assemble a datum from node values of the two parts.
    ///
    /// The mean of `ω₀` is removed from the `(0, 0)` coefficient of `f₀`, so
    /// the spectral decomposition stays exact. A negative `Ω₀` is flagged,
    /// not rejected.
    pub fn from_parts(
        family: impl Into<String>,
        f0: PhysicalField,
        big_omega0: PhysicalField,
        core_scale: Option<f64>,
    ) -> Result<Self> {
        if !Arc::ptr_eq(f0.grid(), big_omega0.grid()) {
            return Err(LabError::Config("datum parts live on different grids".into()));
        }
        let omega = &f0 + &big_omega0;
        let raw_mean = omega.mean();
        let min_positive_part = big_omega0.min();
        let tol = 1e-14 * big_omega0.linf().max(f0.linf());

        let mut f_hat = f0.to_spectral();
        let p_hat = big_omega0.to_spectral();
        f_hat.coeffs_mut()[0] = Complex64::new(-p_hat.coeffs()[0].re, 0.0);
        let w_hat = &f_hat + &p_hat;

        let mut defect = 0.0_f64;
        for ((a, b), w) in f0.values().iter().zip(big_omega0.values()).zip(omega.values()) {
            defect = defect.max((a + b - w).abs());
        }
        let w_phys = w_hat.to_physical();
        Ok(InitialDatum {
            meta: DatumMeta {
                family: family.into(),
                total_mass: w_phys.l1(),
                core_scale,
                stress: false,
                hypotheses: HypothesisFlags {
                    decomposition_defect: defect,
                    min_positive_part,
                    raw_mean,
                    sign_ok: min_positive_part >= -tol,
                },
            },
            omega0: w_hat,
            f0: f_hat,
            big_omega0: p_hat,
        })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.omega0.grid()
    }

    pub fn with_stress(mut self, stress: bool) -> Self {
        self.meta.stress = stress;
        self
    }

    /// Convolve all three fields with the same kernel; the decomposition and
    /// the sign of `Ω₀` are preserved.
    pub fn mollified(&self, alpha: f64) -> Result<Self> {
        let m = crate::spectral::Mollifier::new(self.grid(), alpha)?;
        let omega0 = m.apply(&self.omega0);
        let mut meta = self.meta.clone();
        meta.total_mass = omega0.to_physical().l1();
        Ok(InitialDatum {
            omega0,
            f0: m.apply(&self.f0),
            big_omega0: m.apply(&self.big_omega0),
            meta,
        })
    }
}
