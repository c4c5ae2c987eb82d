use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::concentration::{concentration_curve, DiskMask};
use crate::error::{LabError, Result};
use crate::spectral::{Grid, Mollifier, PhysicalField, SpectralField};

/// Decomposition `ω = ω₁ + ω₂` with `ω₁ = ω * ρ_α` at `α = η√ν`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub eta: f64,
    pub alpha: f64,
    /// `α ≥ 2h`; when false every value is still computed on the grid.
    pub resolved: bool,
    pub omega_l1: f64,
    pub omega1_l1: f64,
    pub omega1_linf: f64,
    pub omega1_l2: f64,
    pub omega2_l2: f64,
    /// `C(α)` of `|ω|`.
    pub conc_alpha: f64,
    /// Kernel constant `max ρ_α / mean_{supp} ρ_α`.
    pub kappa: f64,
    /// Area of the sampled kernel support.
    pub support_area: f64,
    /// `‖ω₁‖_{L¹} - ‖ω‖_{L¹}`; non-positive by Young's inequality.
    pub r1_l1: f64,
    /// `‖ω₁‖_{L∞} α² - C(α)`.
    pub r1_inf: f64,
    /// `‖ω₁‖_{L∞} |supp ρ_α| - κ C(α)`; non-positive on the grid.
    pub r1_inf_excess: f64,
    /// `‖ω₂‖² / (α² ‖∇ω‖²)`; absent when `∇ω = 0`.
    pub r2: Option<f64>,
}

/// Precomputed kernel and disk for repeated splits at one `(η, ν)`.
#[derive(Debug, Clone)]
pub struct Splitter {
    eta: f64,
    mollifier: Mollifier,
    disk: DiskMask,
    resolved: bool,
}

impl Splitter {
    pub fn new(grid: &Arc<Grid>, eta: f64, nu: f64) -> Result<Self> {
        if !(eta > 0.0 && nu > 0.0) {
            return Err(LabError::Domain(format!(
                "split needs eta > 0 and nu > 0, got eta = {eta}, nu = {nu}"
            )));
        }
        let alpha = eta * nu.sqrt();
        if alpha > std::f64::consts::PI {
            return Err(LabError::Domain(format!(
                "split scale {alpha} exceeds half the torus"
            )));
        }
        let resolved = alpha >= 2.0 * grid.h() * (1.0 - 1e-12);
        Ok(Splitter {
            eta,
            mollifier: Mollifier::new_unchecked(grid, alpha),
            disk: DiskMask::new_unchecked(grid, alpha),
            resolved,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.mollifier.alpha()
    }

    pub fn is_resolved(&self) -> bool {
        self.resolved
    }

    pub fn mollifier(&self) -> &Mollifier {
        &self.mollifier
    }

    pub fn split(&self, omega: &SpectralField) -> SplitRecord {
        let (phys, omega1) = SpectralField::to_physical_pair(omega, &self.mollifier.apply(omega));
        self.split_with(omega, &phys, &omega1)
    }

    /// Split when the physical `ω` and `ω₁` are already at hand.
    pub(crate) fn split_with(
        &self,
        omega: &SpectralField,
        phys: &PhysicalField,
        omega1: &PhysicalField,
    ) -> SplitRecord {
        let alpha = self.alpha();
        let omega2 = omega - &self.mollifier.apply(omega);
        let omega2_sq = omega2.l2_sq();
        let conc = concentration_curve(phys, std::slice::from_ref(&self.disk))[0].value;
        let omega_l1 = phys.l1();
        let omega1_l1 = omega1.l1();
        let omega1_linf = omega1.linf();
        let grad = omega.h1_semi_sq();
        let kappa = self.mollifier.kappa();
        let support_area = self.mollifier.support_area();
        SplitRecord {
            eta: self.eta,
            alpha,
            resolved: self.resolved,
            omega_l1,
            omega1_l1,
            omega1_linf,
            omega1_l2: omega1.l2(),
            omega2_l2: omega2_sq.sqrt(),
            conc_alpha: conc,
            kappa,
            support_area,
            r1_l1: omega1_l1 - omega_l1,
            r1_inf: omega1_linf * alpha * alpha - conc,
            r1_inf_excess: omega1_linf * support_area - kappa * conc,
            r2: (grad > 0.0).then(|| omega2_sq / (alpha * alpha * grad)),
        }
    }
}

/// One-off split of `omega` at scale `η√ν`; unresolved scales are flagged,
/// not rejected.
pub fn mollifier_split(omega: &SpectralField, eta: f64, nu: f64) -> Result<SplitRecord> {
    Ok(Splitter::new(omega.grid(), eta, nu)?.split(omega))
}
