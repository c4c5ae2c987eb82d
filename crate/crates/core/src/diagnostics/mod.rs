//! Energies, balances, concentration and split diagnostics.

mod audit;
mod concentration;
mod equi;
mod record;
mod series;
mod split;

pub use audit::{apriori_bounds_audit, AuditReport, Check, BOUND_SLACK, MASS_SLACK};
pub use concentration::{
    concentration_curve, concentration_function, radius_ladder, Concentration, DiskMask,
};
pub use equi::{beta_functional, equi_integrability_profile, Beta, EquiProfile};
pub use record::{
    Baseline, Diagnostician, DiagnosticsConfig, DiagnosticsRecord, Residuals, ScalarNorms,
    COMPACT_PART, POSITIVE_PART,
};
pub use series::{
    accumulated_dissipation_split,
    dissipation_integral, dissipation_split, energy_right_continuity_probe, kinetic_energy,
    sym2_integrals, trapezoid, DissipationSplit, RightContinuity, Sym2,
};
pub use split::{mollifier_split, SplitRecord, Splitter};
