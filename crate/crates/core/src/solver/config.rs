use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diagnostics::DiagnosticsConfig;
use crate::error::{LabError, Result};
use crate::initial_data::MIN_CORE_CELLS;
use crate::spectral::Grid;

/// Time-step selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case", deny_unknown_fields)]
pub enum DtPolicy {
    Fixed { dt: f64 },
    /// `dt = safety · h / max(‖u‖_∞, floor)`, capped at `dt_max`.
    Cfl { safety: f64, dt_max: f64 },
}

impl DtPolicy {
    fn validate(&self) -> Result<()> {
        match *self {
            DtPolicy::Fixed { dt } if !(dt > 0.0 && dt.is_finite()) => {
                Err(LabError::Config(format!("time step must be positive, got {dt}")))
            }
            DtPolicy::Cfl { safety, .. } if !(safety > 0.0 && safety <= 1.0) => Err(
                LabError::Config(format!("CFL safety must lie in (0, 1], got {safety}")),
            ),
            DtPolicy::Cfl { dt_max, .. } if !(dt_max > 0.0 && dt_max.is_finite()) => Err(
                LabError::Config(format!("dt_max must be positive, got {dt_max}")),
            ),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub n: usize,
    pub nu: f64,
    pub t_end: f64,
    pub dt: DtPolicy,
    /// 2/3-rule truncation of the nonlinear term.
    #[serde(default = "yes")]
    pub dealias: bool,
    /// When false the velocity is forced to zero and only diffusion acts.
    #[serde(default = "yes")]
    pub advection: bool,
    /// Times at which a diagnostics record is emitted. `0`, `delta` and
    /// `t_end` are always added.
    pub sample_times: Vec<f64>,
    /// Split time `δ` between the early and late dissipation windows.
    pub delta: f64,
    /// Mollify the datum at this scale before integrating.
    #[serde(default)]
    pub premollify: Option<f64>,
    /// Largest wavenumber kept in the stored vorticity snapshots.
    #[serde(default = "default_snapshot_kmax")]
    pub snapshot_kmax: usize,
    #[serde(default)]
    pub diagnostics: DiagnosticsConfig,
}

fn yes() -> bool {
    true
}

fn default_snapshot_kmax() -> usize {
    64
}

/// Default number of uniform sample intervals.
pub const DEFAULT_SAMPLES: usize = 20;

impl SolverConfig {
    /// Config with `δ = T/10`, uniform samples and default diagnostics.
    pub fn new(n: usize, nu: f64, t_end: f64, dt: DtPolicy) -> Self {
        let delta = 0.1 * t_end;
        SolverConfig {
            n,
            nu,
            t_end,
            dt,
            dealias: true,
            advection: true,
            sample_times: uniform_samples(t_end, DEFAULT_SAMPLES),
            delta,
            premollify: None,
            snapshot_kmax: default_snapshot_kmax(),
            diagnostics: DiagnosticsConfig::default(),
        }
    }

    pub fn grid(&self) -> Result<Arc<Grid>> {
        Grid::get(self.n)
    }

    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(LabError::Config(format!("viscosity must be positive, got {}", self.nu)));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(LabError::Config(format!("t_end must be positive, got {}", self.t_end)));
        }
        if !(self.delta > 0.0 && self.delta < self.t_end) {
            return Err(LabError::Config(format!(
                "delta must lie in (0, t_end), got {}",
                self.delta
            )));
        }
        if self.sample_times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(LabError::Config("sample times must be strictly increasing".into()));
        }
        if self
            .sample_times
            .iter()
            .any(|&t| !(t >= 0.0 && t <= self.t_end))
        {
            return Err(LabError::Config("sample times must lie in [0, t_end]".into()));
        }
        if let Some(eps) = self.premollify {
            let limit = MIN_CORE_CELLS * grid.h();
            if !(eps >= limit * (1.0 - 1e-12)) {
                return Err(LabError::UnderResolved {
                    what: "pre-mollification scale",
                    value: eps,
                    limit,
                });
            }
        }
        self.dt.validate()?;
        self.diagnostics.validate()
    }

    /// Sample times with `0`, `δ` and `T` merged in.
    pub fn effective_samples(&self) -> Vec<f64> {
        let mut ts = self.sample_times.clone();
        ts.extend([0.0, self.delta, self.t_end]);
        ts.sort_by(f64::total_cmp);
        let tol = 1e-12 * self.t_end;
        ts.dedup_by(|b, a| (*b - *a).abs() <= tol);
        ts
    }
}

/// `0, T/count, …, T`.
pub fn uniform_samples(t_end: f64, count: usize) -> Vec<f64> {
    let count = count.max(1);
    (0..=count).map(|i| t_end * i as f64 / count as f64).collect()
}
