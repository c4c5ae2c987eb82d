use serde::{Deserialize, Serialize};

use super::record::DiagnosticsRecord;

/// Relative slack allowed before a bound counts as violated.
pub const BOUND_SLACK: f64 = 1e-6;
/// Relative slack for the uniform `L¹` bound.
pub const MASS_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub satisfied: bool,
}

impl Check {
    fn new(lhs: f64, rhs: f64, rel: f64) -> Self {
        Check {
            lhs,
            rhs,
            slack: rhs - lhs,
            satisfied: lhs <= rhs * (1.0 + rel),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub t: f64,
    /// `‖ω(t)‖ ≤ ‖u₀‖/√(2tν)`; skipped at `t = 0`.
    pub enstrophy_decay: Option<Check>,
    /// `∫_{B_√ν} |ω(t)| ≤ ‖u₀‖/√(2t)`; skipped at `t = 0`.
    pub kolmogorov_disk: Option<Check>,
    /// `‖ω(t)‖_{L¹} ≤ M`.
    pub l1_bound: Check,
}

impl AuditReport {
    pub fn all_satisfied(&self) -> bool {
        self.l1_bound.satisfied
            && self.enstrophy_decay.is_none_or(|c| c.satisfied)
            && self.kolmogorov_disk.is_none_or(|c| c.satisfied)
    }
}

/// Check the a priori bounds at one record against `‖u₀‖_{L²}` and `M`.
pub fn apriori_bounds_audit(
    record: &DiagnosticsRecord,
    nu: f64,
    u0_l2: f64,
    total_mass: f64,
) -> AuditReport {
    let t = record.t;
    let timed = t > 0.0;
    AuditReport {
        t,
        enstrophy_decay: timed.then(|| {
            Check::new(record.enstrophy.sqrt(), u0_l2 / (2.0 * t * nu).sqrt(), BOUND_SLACK)
        }),
        kolmogorov_disk: timed
            .then(|| Check::new(record.conc_sqrt_nu, u0_l2 / (2.0 * t).sqrt(), BOUND_SLACK)),
        l1_bound: Check::new(record.l1_vorticity, total_mass, MASS_SLACK),
    }
}
