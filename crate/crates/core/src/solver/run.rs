use log::{debug, warn};
use serde::{Deserialize, Serialize};

use super::config::{DtPolicy, SolverConfig};
use super::state::{FlowState, VorticitySnapshot};
use super::stepper::{cfl_dt, StepOptions, Stepper};
use crate::diagnostics::{Baseline, Diagnostician, DiagnosticsRecord, POSITIVE_PART};
use crate::error::{LabError, Result};
use crate::initial_data::InitialDatum;

/// Tail fraction below which a run counts as resolved.
pub const RESOLVED_TAIL: f64 = 1e-6;

/// Records and summary flags of one integration.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub nu: f64,
    pub n: usize,
    pub family: String,
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<VorticitySnapshot>,
    /// State at the last time reached.
    pub final_state: FlowState,
    pub baseline: Baseline,
    /// `‖Ω₀‖_∞` of the integrated datum.
    pub positive_part_linf0: f64,
    /// `‖ω₀‖_∞` of the integrated datum.
    pub omega_linf0: f64,
    pub steps: usize,
    pub complete: bool,
    pub failure: Option<String>,
}

/// Flags derived from the records.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryFlags {
    pub complete: bool,
    /// Tail fraction below [`RESOLVED_TAIL`] at every sample.
    pub resolved: bool,
    pub max_tail_fraction: f64,
    /// Split scale `η√ν` below `2h`.
    pub sub_kolmogorov_unresolved: bool,
    /// `max_t max |f + Ω - ω|`.
    pub max_split_defect: f64,
    /// `min_t min Ω`.
    pub min_positive_part: f64,
}

impl Trajectory {
    pub fn flags(&self) -> TrajectoryFlags {
        let max_tail = self.records.iter().map(|r| r.tail_fraction).fold(0.0, f64::max);
        TrajectoryFlags {
            complete: self.complete,
            resolved: self.complete && max_tail < RESOLVED_TAIL,
            max_tail_fraction: max_tail,
            sub_kolmogorov_unresolved: self.records.first().is_some_and(|r| !r.split.resolved),
            max_split_defect: self
                .records
                .iter()
                .filter_map(|r| r.split_defect)
                .fold(0.0, f64::max),
            min_positive_part: self
                .records
                .iter()
                .flat_map(|r| r.scalars.iter().filter(|s| s.name == POSITIVE_PART))
                .map(|s| s.min)
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn record_at(&self, t: f64) -> Option<&DiagnosticsRecord> {
        let tol = 1e-12 * t.abs().max(1.0);
        self.records.iter().find(|r| (r.t - t).abs() <= tol)
    }
}

/// Integrate `datum` to `config.t_end`, emitting a record at every sample time.
///
/// Steps are shortened so that each sample time is hit exactly. A blow-up
/// ends the run early with `complete = false` and the records gathered so far.
pub fn run(config: &SolverConfig, datum: &InitialDatum) -> Result<Trajectory> {
    config.validate()?;
    let grid = config.grid()?;
    if datum.grid().n() != grid.n() {
        return Err(LabError::Config(format!(
            "datum lives on a {0}x{0} grid but the solver is configured for {1}x{1}",
            datum.grid().n(),
            grid.n()
        )));
    }
    let datum = match config.premollify {
        Some(eps) => datum.mollified(eps)?,
        None => datum.clone(),
    };
    let nu = config.nu;
    let diag = Diagnostician::new(
        &grid,
        nu,
        &config.diagnostics,
        &datum.omega0,
        datum.meta.total_mass,
    )?;
    let opts = StepOptions {
        dealias: config.dealias,
        advection: config.advection,
    };
    let mut stepper = Stepper::new(grid.clone(), nu, opts);
    let mut state = FlowState::from_datum(&datum, nu)?;
    let samples = config.effective_samples();

    let mut records: Vec<DiagnosticsRecord> = Vec::with_capacity(samples.len());
    let mut snapshots = Vec::with_capacity(samples.len());
    let mut dissipated = 0.0;
    let mut steps = 0;
    let mut failure = None;

    'samples: for &target in &samples {
        while state.t < target {
            let remaining = target - state.t;
            let dt_policy = match config.dt {
                DtPolicy::Fixed { dt } => dt,
                DtPolicy::Cfl { safety, dt_max } => cfl_dt(&state, safety, dt_max),
            };
            let m = (remaining / dt_policy * (1.0 - 1e-12)).ceil().max(1.0);
            let dt = remaining / m;
            match stepper.step_with_dissipation(&state, dt) {
                Ok((mut next, d)) => {
                    if m == 1.0 {
                        next.t = target;
                    }
                    dissipated += d;
                    state = next;
                    steps += 1;
                }
                Err(e) => {
                    warn!("nu = {nu}: {e}");
                    failure = Some(e.to_string());
                    break 'samples;
                }
            }
        }
        let rec = diag.record(state.t, state.omega(), state.scalars(), dissipated, records.last());
        debug!("nu = {nu} t = {:.4} E = {:.6e}", rec.t, rec.energy);
        records.push(rec);
        snapshots.push(state.snapshot(config.snapshot_kmax));
    }

    Ok(Trajectory {
        nu,
        n: grid.n(),
        family: datum.meta.family.clone(),
        records,
        snapshots,
        final_state: state,
        baseline: diag.baseline(),
        positive_part_linf0: datum.big_omega0.to_physical().linf(),
        omega_linf0: datum.omega0.to_physical().linf(),
        steps,
        complete: failure.is_none(),
        failure,
    })
}
