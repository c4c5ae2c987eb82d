use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::concentration::{concentration_curve, radius_ladder, Concentration, DiskMask};
use super::equi::{beta_functional, Beta};
use super::split::{SplitRecord, Splitter};
use crate::error::{LabError, Result};
use crate::spectral::{
    energy_from_vorticity, velocity_gradient_sq, Grid, PhysicalField, SpectralField,
};

/// Names under which the solver carries the two parts of the decomposition.
pub const COMPACT_PART: &str = "f";
pub const POSITIVE_PART: &str = "Omega";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiagnosticsConfig {
    /// Split factor `η`; the split scale is `η√ν`.
    pub eta: f64,
    pub beta: Beta,
    /// Radii added to the geometric ladder.
    pub extra_radii: Vec<f64>,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        DiagnosticsConfig {
            eta: 0.5,
            beta: Beta::SLog,
            extra_radii: Vec::new(),
        }
    }
}

impl DiagnosticsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(LabError::Config(format!("eta must be positive, got {}", self.eta)));
        }
        if self.extra_radii.iter().any(|r| !(*r > 0.0)) {
            return Err(LabError::Config("extra radii must be positive".into()));
        }
        self.beta.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarNorms {
    pub name: String,
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    pub min: f64,
    pub beta: f64,
}

/// Signed residuals of the balances and bounds checked at one sample.
///
/// Balances are `lhs - rhs` (zero when exact); bounds are `rhs - lhs`
/// (non-negative when satisfied).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `E(t) + ν ∫₀ᵗ ‖∇u‖² - E(0)`.
    pub energy_balance: f64,
    /// `Δ‖ω‖²/Δt + ν (‖∇ω‖²_prev + ‖∇ω‖²)` over the preceding sample interval.
    pub enstrophy_balance: Option<f64>,
    /// `‖ω₁‖_{L¹} - ‖ω‖_{L¹}`.
    pub split_l1: f64,
    /// `‖ω₁‖_{L∞} |supp ρ| - κ C(η√ν)`.
    pub split_linf: f64,
    /// Measured `‖ω₂‖² / (η²ν ‖∇ω‖²)`.
    pub split_ratio: Option<f64>,
    /// `‖u₀‖/√(2tν) - ‖ω(t)‖`; absent at `t = 0`.
    pub enstrophy_decay: Option<f64>,
    /// `‖u₀‖/√(2t) - ∫_{B_√ν} |ω(t)|`; absent at `t = 0`.
    pub kolmogorov_disk: Option<f64>,
}

/// Full audit row at one sample time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub energy: f64,
    /// `‖ω‖²_{L²}`.
    pub enstrophy: f64,
    /// `‖∇ω‖²_{L²}`.
    pub grad_enstrophy: f64,
    /// `‖∇u‖²_{L²}`, the integrand of the dissipation.
    pub dissipation_rate: f64,
    /// `ν ∫₀ᵗ ‖∇u‖²` accumulated by the time stepper.
    pub dissipated: f64,
    pub l1_vorticity: f64,
    pub linf_vorticity: f64,
    /// Spectral mass fraction of `ω` beyond the 2/3 band.
    pub tail_fraction: f64,
    pub concentration: Vec<Concentration>,
    pub conc_sqrt_nu: f64,
    pub conc_eta_sqrt_nu: f64,
    pub split: SplitRecord,
    pub scalars: Vec<ScalarNorms>,
    /// `∫ β(|f|)` for the compact part, or of `ω` when no split is carried.
    pub beta_functional: f64,
    /// `max |f + Ω - ω|` when both parts are carried.
    pub split_defect: Option<f64>,
    pub residuals: Residuals,
}

/// Reference quantities of a trajectory that every record is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Baseline {
    pub energy0: f64,
    /// `‖u₀‖_{L²}`.
    pub u0_l2: f64,
    /// Uniform `L¹` bound `M` of the initial vorticity.
    pub total_mass: f64,
}

/// Per-trajectory context: masks, kernel and baseline built once.
#[derive(Debug, Clone)]
pub struct Diagnostician {
    nu: f64,
    config: DiagnosticsConfig,
    /// Ladder masks followed by the `√ν` disk.
    masks: Vec<DiskMask>,
    splitter: Splitter,
    baseline: Baseline,
}

impl Diagnostician {
    pub fn new(
        grid: &Arc<Grid>,
        nu: f64,
        config: &DiagnosticsConfig,
        omega0: &SpectralField,
        total_mass: f64,
    ) -> Result<Self> {
        config.validate()?;
        let mut radii = radius_ladder(grid);
        radii.extend(config.extra_radii.iter().copied());
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        let mut masks = radii
            .into_iter()
            .map(|r| DiskMask::new(grid, r))
            .collect::<Result<Vec<_>>>()?;
        masks.push(DiskMask::new_unchecked(grid, nu.sqrt()));
        let energy0 = energy_from_vorticity(omega0);
        Ok(Diagnostician {
            nu,
            config: config.clone(),
            masks,
            splitter: Splitter::new(grid, config.eta, nu)?,
            baseline: Baseline {
                energy0,
                u0_l2: (2.0 * energy0).sqrt(),
                total_mass,
            },
        })
    }

    pub fn baseline(&self) -> Baseline {
        self.baseline
    }

    pub fn splitter(&self) -> &Splitter {
        &self.splitter
    }

    /// Audit row for `ω` and the carried scalars at time `t`.
    pub fn record(
        &self,
        t: f64,
        omega: &SpectralField,
        scalars: &[(String, SpectralField)],
        dissipated: f64,
        prev: Option<&DiagnosticsRecord>,
    ) -> DiagnosticsRecord {
        let nu = self.nu;
        let (phys, omega1) =
            SpectralField::to_physical_pair(omega, &self.splitter.mollifier().apply(omega));
        let split = self.splitter.split_with(omega, &phys, &omega1);

        let mut concentration = concentration_curve(&phys, &self.masks);
        let conc_sqrt_nu = concentration.pop().expect("mask pushed").value;

        let phys_scalars = physical_scalars(scalars);
        let scalar_norms: Vec<ScalarNorms> = phys_scalars
            .iter()
            .map(|(name, f)| ScalarNorms {
                name: name.clone(),
                l1: f.l1(),
                l2: f.l2(),
                linf: f.linf(),
                min: f.min(),
                beta: beta_functional(f, self.config.beta),
            })
            .collect();
        let find = |name: &str| phys_scalars.iter().find(|(n, _)| n == name).map(|(_, f)| f);
        let split_defect = match (find(COMPACT_PART), find(POSITIVE_PART)) {
            (Some(f), Some(p)) => Some(
                f.values()
                    .iter()
                    .zip(p.values())
                    .zip(phys.values())
                    .map(|((a, b), w)| (a + b - w).abs())
                    .fold(0.0, f64::max),
            ),
            _ => None,
        };
        let beta = match find(COMPACT_PART) {
            Some(f) => beta_functional(f, self.config.beta),
            None => beta_functional(&phys, self.config.beta),
        };

        let energy = energy_from_vorticity(omega);
        let enstrophy = omega.l2_sq();
        let grad_enstrophy = omega.h1_semi_sq();
        let enstrophy_balance = prev.and_then(|p| {
            let dt = t - p.t;
            (dt > 0.0).then(|| {
                (enstrophy - p.enstrophy) / dt + nu * (grad_enstrophy + p.grad_enstrophy)
            })
        });
        let u0 = self.baseline.u0_l2;
        let residuals = Residuals {
            energy_balance: energy + dissipated - self.baseline.energy0,
            enstrophy_balance,
            split_l1: split.r1_l1,
            split_linf: split.r1_inf_excess,
            split_ratio: split.r2,
            enstrophy_decay: (t > 0.0).then(|| u0 / (2.0 * t * nu).sqrt() - enstrophy.sqrt()),
            kolmogorov_disk: (t > 0.0).then(|| u0 / (2.0 * t).sqrt() - conc_sqrt_nu),
        };

        DiagnosticsRecord {
            t,
            energy,
            enstrophy,
            grad_enstrophy,
            dissipation_rate: velocity_gradient_sq(omega),
            dissipated,
            l1_vorticity: phys.l1(),
            linf_vorticity: phys.linf(),
            tail_fraction: omega.tail_fraction(),
            concentration,
            conc_sqrt_nu,
            conc_eta_sqrt_nu: split.conc_alpha,
            split,
            scalars: scalar_norms,
            beta_functional: beta,
            split_defect,
            residuals,
        }
    }
}

fn physical_scalars(scalars: &[(String, SpectralField)]) -> Vec<(String, PhysicalField)> {
    let mut out = Vec::with_capacity(scalars.len());
    for pair in scalars.chunks(2) {
        match pair {
            [(na, a), (nb, b)] => {
                let (pa, pb) = SpectralField::to_physical_pair(a, b);
                out.push((na.clone(), pa));
                out.push((nb.clone(), pb));
            }
            [(na, a)] => out.push((na.clone(), a.to_physical())),
            _ => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn taylor_green(g: &Arc<Grid>, amp: f64) -> SpectralField {
        PhysicalField::from_fn(g.clone(), |x, y| -2.0 * amp * x.cos() * y.cos()).to_spectral()
    }

    #[test]
    fn taylor_green_record_values() {
        let g = Grid::get(64).unwrap();
        let w = taylor_green(&g, 1.0);
        let d = Diagnostician::new(&g, 0.1, &DiagnosticsConfig::default(), &w, w.to_physical().l1())
            .unwrap();
        let r = d.record(0.0, &w, &[], 0.0, None);
        assert!((r.energy - PI * PI).abs() < 1e-12);
        assert!((r.enstrophy - 4.0 * PI * PI).abs() < 1e-11);
        assert!((r.grad_enstrophy - 8.0 * PI * PI).abs() < 1e-10);
        assert!((r.dissipation_rate - r.enstrophy).abs() < 1e-11);
        assert_eq!(r.residuals.energy_balance, 0.0);
        assert!(r.residuals.enstrophy_decay.is_none());
        assert!(r.split_defect.is_none());
        assert!(r.tail_fraction < 1e-20);
        for w in r.concentration.windows(2) {
            assert!(w[1].value >= w[0].value);
        }
        assert!(r.concentration.last().unwrap().value <= r.l1_vorticity * (1.0 + 1e-12));
    }

    #[test]
    fn split_defect_uses_named_parts() {
        let g = Grid::get(32).unwrap();
        let w = taylor_green(&g, 1.0);
        let half = w.scale(0.5);
        let d = Diagnostician::new(&g, 0.1, &DiagnosticsConfig::default(), &w, 1.0).unwrap();
        let scalars = vec![
            (COMPACT_PART.to_string(), half.clone()),
            (POSITIVE_PART.to_string(), half),
        ];
        let r = d.record(0.5, &w, &scalars, 0.0, None);
        assert!(r.split_defect.unwrap() < 1e-14);
        assert_eq!(r.scalars.len(), 2);
        assert!(r.residuals.enstrophy_decay.unwrap() > 0.0);
    }

    #[test]
    fn config_validation() {
        let mut c = DiagnosticsConfig::default();
        assert!(c.validate().is_ok());
        c.eta = 0.0;
        assert!(c.validate().is_err());
    }
}
