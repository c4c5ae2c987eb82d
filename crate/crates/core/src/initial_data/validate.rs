use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::datum::InitialDatum;
use crate::diagnostics::{equi_integrability_profile, Beta, EquiProfile};
use crate::error::{LabError, Result};
use crate::spectral::energy_from_vorticity;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// `‖ω₀ᵛ‖_{L¹}` per member.
    pub l1_norms: Vec<f64>,
    pub sup_l1: f64,
    /// `‖u₀ᵛ‖_{L²}` per member.
    pub velocity_norms: Vec<f64>,
    /// Pairwise `‖u₀ᵛ - u₀^{ν'}‖_{L²}`.
    pub velocity_distance: Vec<Vec<f64>>,
    /// Largest entry of `velocity_distance`.
    pub h1_proxy: f64,
    /// Tail profile of each `f₀ᵛ`.
    pub equi_profiles: Vec<EquiProfile>,
    /// Largest tail mass over the family at each level.
    pub sup_tail: Vec<f64>,
    pub min_positive_part: Vec<f64>,
    /// Members whose `Ω₀` dips below zero.
    pub sign_violations: Vec<usize>,
    /// Some member shrinks its core with `ν`.
    pub stress: bool,
}

impl HypothesisReport {
    pub fn signs_ok(&self) -> bool {
        self.sign_violations.is_empty()
    }
}

/// Grid-level proxies for the compactness hypotheses on a family of data.
pub fn validate_hypotheses(family: &[InitialDatum], lambdas: &[f64]) -> Result<HypothesisReport> {
    let first = family
        .first()
        .ok_or_else(|| LabError::Config("hypothesis check needs a nonempty family".into()))?;
    if family.iter().any(|d| !Arc::ptr_eq(d.grid(), first.grid())) {
        return Err(LabError::Config("family members live on different grids".into()));
    }
    let l1_norms: Vec<f64> = family.iter().map(|d| d.omega0.to_physical().l1()).collect();
    let velocity_norms = family
        .iter()
        .map(|d| (2.0 * energy_from_vorticity(&d.omega0)).sqrt())
        .collect();
    let k = family.len();
    let mut velocity_distance = vec![vec![0.0; k]; k];
    let mut h1_proxy = 0.0_f64;
    for i in 0..k {
        for j in i + 1..k {
            let diff = &family[i].omega0 - &family[j].omega0;
            let d = (2.0 * energy_from_vorticity(&diff)).sqrt();
            velocity_distance[i][j] = d;
            velocity_distance[j][i] = d;
            h1_proxy = h1_proxy.max(d);
        }
    }
    let equi_profiles = family
        .iter()
        .map(|d| equi_integrability_profile(&d.f0.to_physical(), lambdas, Beta::default()))
        .collect::<Result<Vec<_>>>()?;
    let sup_tail = (0..lambdas.len())
        .map(|l| equi_profiles.iter().map(|p| p.tail_masses[l]).fold(0.0, f64::max))
        .collect();
    let min_positive_part: Vec<f64> = family.iter().map(|d| d.meta.hypotheses.min_positive_part).collect();
    let sign_violations = family
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.meta.hypotheses.sign_ok)
        .map(|(i, _)| i)
        .collect();
    Ok(HypothesisReport {
        sup_l1: l1_norms.iter().copied().fold(0.0, f64::max),
        l1_norms,
        velocity_norms,
        velocity_distance,
        h1_proxy,
        equi_profiles,
        sup_tail,
        min_positive_part,
        sign_violations,
        stress: family.iter().any(|d| d.meta.stress),
    })
}
