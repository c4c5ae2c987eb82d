use serde::{Deserialize, Serialize};

use crate::diagnostics::{
    accumulated_dissipation_split, apriori_bounds_audit, dissipation_split, energy_right_continuity_probe, sym2_integrals,
    Baseline, DiagnosticsRecord, DissipationSplit, RightContinuity, Sym2,
};
use crate::solver::{Trajectory, TrajectoryFlags};

/// Earliest sample time at which the time-weighted bounds are audited.
pub const AUDIT_FROM: f64 = 0.01;

/// One line of the per-trajectory CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub energy: f64,
    pub enstrophy: f64,
    pub grad_enstrophy: f64,
    pub l1_vorticity: f64,
    pub conc_r_sqrtnu: f64,
    pub conc_r_eta_sqrtnu: f64,
    pub omega1_linf: f64,
    pub omega2_l2sq: f64,
    pub res_energy: f64,
    pub res_enstrophy: Option<f64>,
    pub res_prop25: Option<f64>,
    pub res_kolmogorov: Option<f64>,
}

impl From<&DiagnosticsRecord> for TrajectoryRow {
    fn from(r: &DiagnosticsRecord) -> Self {
        TrajectoryRow {
            t: r.t,
            energy: r.energy,
            enstrophy: r.enstrophy,
            grad_enstrophy: r.grad_enstrophy,
            l1_vorticity: r.l1_vorticity,
            conc_r_sqrtnu: r.conc_sqrt_nu,
            conc_r_eta_sqrtnu: r.conc_eta_sqrt_nu,
            omega1_linf: r.split.omega1_linf,
            omega2_l2sq: r.split.omega2_l2 * r.split.omega2_l2,
            res_energy: r.residuals.energy_balance,
            res_enstrophy: r.residuals.enstrophy_balance,
            res_prop25: r.residuals.enstrophy_decay,
            res_kolmogorov: r.residuals.kolmogorov_disk,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationCurve {
    pub t: f64,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
}

/// Outcome of the a priori bound audit over all samples with `t ≥ AUDIT_FROM`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub enstrophy_decay_ok: bool,
    pub kolmogorov_disk_ok: bool,
    pub l1_bound_ok: bool,
    /// Smallest `slack / rhs` of each bound.
    pub enstrophy_decay_min_slack: Option<f64>,
    pub kolmogorov_disk_min_slack: Option<f64>,
    pub l1_bound_min_slack: Option<f64>,
}

/// Worst residuals over the samples, scaled as in their acceptance gates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    /// `max |E + ν∫‖∇u‖² - E₀| / E₀`.
    pub energy_balance_rel: Option<f64>,
    /// `max |Δ‖ω‖²/Δt + 2ν‖∇ω‖²| · T / ‖ω₀‖²`.
    pub enstrophy_balance_rel: Option<f64>,
    /// `max (‖ω₁‖_{L¹} - ‖ω‖_{L¹})`.
    pub split_l1_max: Option<f64>,
    /// `max (‖ω₁‖_∞ |supp ρ| - κ C(η√ν))`.
    pub split_linf_max: Option<f64>,
    pub split_ratio_min: Option<f64>,
    pub split_ratio_max: Option<f64>,
    /// `max |f + Ω - ω| / ‖ω₀‖_∞`.
    pub split_defect_rel: Option<f64>,
    /// `min Ω / ‖Ω₀‖_∞`.
    pub min_positive_rel: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub nu: f64,
    pub complete: bool,
    pub failure: Option<String>,
    pub steps: usize,
    pub flags: TrajectoryFlags,
    pub baseline: Baseline,
    pub final_t: f64,
    pub final_energy: f64,
    /// `D(ν) = ν ∫₀ᵀ ‖∇u‖²` split at `δ`, accumulated inside the time stepper.
    pub dissipation: Option<DissipationSplit>,
    /// The same split from the trapezoid rule on the samples, as a cross-check.
    pub dissipation_trapezoid: Option<DissipationSplit>,
    pub sym2: Option<Sym2>,
    pub right_continuity: Option<RightContinuity>,
    pub audit: AuditSummary,
    pub residuals: ResidualSummary,
    pub concentration_curves: Vec<ConcentrationCurve>,
    pub rows: Vec<TrajectoryRow>,
}

fn max_of(it: impl Iterator<Item = f64>) -> Option<f64> {
    it.fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
}

fn min_of(it: impl Iterator<Item = f64>) -> Option<f64> {
    it.fold(None, |m, v| Some(m.map_or(v, |m: f64| m.min(v))))
}

pub fn summarise(traj: &Trajectory, delta: f64, t_end: f64, concentration_times: &[f64]) -> RunSummary {
    let nu = traj.nu;
    let recs = &traj.records;
    let base = traj.baseline;
    let last = recs.last();
    let (dissipation, dissipation_trapezoid, sym2, right_continuity) = if traj.complete {
        (
            accumulated_dissipation_split(recs, delta, t_end).ok(),
            dissipation_split(recs, nu, 0.0, delta, t_end).ok(),
            sym2_integrals(recs, nu, delta, t_end).ok(),
            energy_right_continuity_probe(recs, nu, delta).ok(),
        )
    } else {
        (None, None, None, None)
    };

    let audits: Vec<_> = recs
        .iter()
        .filter(|r| r.t >= AUDIT_FROM)
        .map(|r| apriori_bounds_audit(r, nu, base.u0_l2, base.total_mass))
        .collect();
    let all_audits: Vec<_> = recs
        .iter()
        .map(|r| apriori_bounds_audit(r, nu, base.u0_l2, base.total_mass))
        .collect();
    let audit = AuditSummary {
        enstrophy_decay_ok: audits.iter().all(|a| a.enstrophy_decay.is_none_or(|c| c.satisfied)),
        kolmogorov_disk_ok: audits.iter().all(|a| a.kolmogorov_disk.is_none_or(|c| c.satisfied)),
        l1_bound_ok: all_audits.iter().all(|a| a.l1_bound.satisfied),
        enstrophy_decay_min_slack: min_of(
            audits.iter().filter_map(|a| a.enstrophy_decay).map(|c| c.slack / c.rhs),
        ),
        kolmogorov_disk_min_slack: min_of(
            audits.iter().filter_map(|a| a.kolmogorov_disk).map(|c| c.slack / c.rhs),
        ),
        l1_bound_min_slack: min_of(all_audits.iter().map(|a| a.l1_bound.slack / a.l1_bound.rhs)),
    };

    let z0 = recs.first().map_or(0.0, |r| r.enstrophy);
    let positive = |r: &DiagnosticsRecord| {
        r.scalars
            .iter()
            .find(|s| s.name == crate::diagnostics::POSITIVE_PART)
            .map(|s| s.min)
    };
    let residuals = ResidualSummary {
        energy_balance_rel: (base.energy0 > 0.0)
            .then(|| max_of(recs.iter().map(|r| r.residuals.energy_balance.abs() / base.energy0)))
            .flatten(),
        enstrophy_balance_rel: (z0 > 0.0)
            .then(|| {
                max_of(
                    recs.iter()
                        .filter_map(|r| r.residuals.enstrophy_balance)
                        .map(|e| e.abs() * t_end / z0),
                )
            })
            .flatten(),
        split_l1_max: max_of(recs.iter().map(|r| r.residuals.split_l1)),
        split_linf_max: max_of(recs.iter().map(|r| r.residuals.split_linf)),
        split_ratio_min: min_of(recs.iter().filter_map(|r| r.residuals.split_ratio)),
        split_ratio_max: max_of(recs.iter().filter_map(|r| r.residuals.split_ratio)),
        split_defect_rel: (traj.omega_linf0 > 0.0)
            .then(|| max_of(recs.iter().filter_map(|r| r.split_defect).map(|d| d / traj.omega_linf0)))
            .flatten(),
        min_positive_rel: (traj.positive_part_linf0 > 0.0)
            .then(|| min_of(recs.iter().filter_map(positive).map(|m| m / traj.positive_part_linf0)))
            .flatten(),
    };

    let concentration_curves = concentration_times
        .iter()
        .filter_map(|&t| traj.record_at(t))
        .map(|r| ConcentrationCurve {
            t: r.t,
            radii: r.concentration.iter().map(|c| c.radius).collect(),
            values: r.concentration.iter().map(|c| c.value).collect(),
        })
        .collect();

    RunSummary {
        nu,
        complete: traj.complete,
        failure: traj.failure.clone(),
        steps: traj.steps,
        flags: traj.flags(),
        baseline: base,
        final_t: last.map_or(0.0, |r| r.t),
        final_energy: last.map_or(base.energy0, |r| r.energy),
        dissipation,
        dissipation_trapezoid,
        sym2,
        right_continuity,
        audit,
        residuals,
        concentration_curves,
        rows: recs.iter().map(TrajectoryRow::from).collect(),
    }
}
