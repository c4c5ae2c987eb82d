use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::compactness::{compactness_report, CompactnessReport};
use super::config::SweepConfig;
use super::summary::{summarise, RunSummary};
use crate::error::{LabError, Result};
use crate::initial_data::{validate_hypotheses, HypothesisReport, InitialDatum};
use crate::solver::{run, Trajectory};

/// Cross-viscosity reading of a sweep. Nothing here is extrapolated to `ν = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    /// `D(ν)` along `nu_list`; `None` for runs that did not finish.
    pub dissipation_trend: Vec<Option<f64>>,
    /// Every run finished and `D` drops at each step of the list.
    pub strictly_decreasing: bool,
    /// `D(ν_last) / D(ν_first)`.
    pub last_over_first: Option<f64>,
    /// `max / min` over runs of `ν ∫_δ^T ‖ω‖²`.
    pub sym2_spread: Option<f64>,
    pub energy_gap: Option<f64>,
    pub compactness_proxy: Option<f64>,
    pub statement: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub version: String,
    pub config: SweepConfig,
    pub runs: Vec<RunSummary>,
    pub hypotheses: Option<HypothesisReport>,
    pub compactness: Option<CompactnessReport>,
    pub verdict: Verdict,
    /// Full trajectories, kept in memory only.
    #[serde(skip)]
    pub trajectories: Vec<Trajectory>,
}

impl SweepResult {
    /// Result with no runs, used for schema checks and dry runs.
    pub fn empty(config: SweepConfig) -> Self {
        SweepResult {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            runs: Vec::new(),
            hypotheses: None,
            compactness: None,
            verdict: verdict(&[], None),
            trajectories: Vec::new(),
        }
    }
}

/// Generate the datum for each viscosity of the sweep, premollified when
/// the base config asks for it.
pub fn sweep_data(config: &SweepConfig) -> Result<Vec<InitialDatum>> {
    let grid = config.base.grid()?;
    let nu_max = config.nu_list.first().copied().unwrap_or(1.0);
    config
        .nu_list
        .iter()
        .map(|&nu| {
            let d = config.family.generate(&grid, nu, nu_max)?;
            match config.base.premollify {
                Some(eps) => d.mollified(eps),
                None => Ok(d),
            }
        })
        .collect()
}

/// One trajectory per viscosity on a pool of `config.workers` threads.
///
/// A run that blows up is kept as incomplete; the sweep fails only when no
/// run finishes.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let data = sweep_data(config)?;
    let hypotheses = validate_hypotheses(&data, &config.lambdas)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| LabError::Config(format!("cannot build worker pool: {e}")))?;
    let trajectories = pool.install(|| {
        config
            .nu_list
            .par_iter()
            .zip(data.par_iter())
            .map(|(&nu, datum)| {
                let mut c = config.base.clone();
                c.nu = nu;
                // data were mollified above
                c.premollify = None;
                info!("starting nu = {nu}");
                run(&c, datum)
            })
            .collect::<Result<Vec<Trajectory>>>()
    })?;
    if trajectories.iter().all(|t| !t.complete) {
        return Err(LabError::AllRunsFailed);
    }

    let base = &config.base;
    let runs: Vec<RunSummary> = trajectories
        .iter()
        .map(|t| summarise(t, base.delta, base.t_end, &config.concentration_times))
        .collect();
    let compactness = if trajectories.iter().filter(|t| t.complete).count() >= 2 {
        Some(compactness_report(&trajectories)?)
    } else {
        None
    };
    Ok(SweepResult {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        verdict: verdict(&runs, compactness.as_ref()),
        runs,
        hypotheses: Some(hypotheses),
        compactness,
        trajectories,
    })
}

fn verdict(runs: &[RunSummary], compactness: Option<&CompactnessReport>) -> Verdict {
    let trend: Vec<Option<f64>> = runs
        .iter()
        .map(|r| r.dissipation.filter(|_| r.complete).map(|d| d.total))
        .collect();
    let done: Option<Vec<f64>> = trend.iter().copied().collect();
    let strictly_decreasing = done
        .as_ref()
        .is_some_and(|d| !d.is_empty() && d.windows(2).all(|w| w[1] < w[0]));
    let last_over_first = match (trend.first(), trend.last()) {
        (Some(Some(a)), Some(Some(b))) if *a > 0.0 => Some(b / a),
        _ => None,
    };
    let sym2: Vec<f64> = runs.iter().filter_map(|r| r.sym2).map(|s| s.enstrophy_integral).collect();
    let sym2_spread = if sym2.is_empty() {
        None
    } else {
        let hi = sym2.iter().copied().fold(f64::MIN, f64::max);
        let lo = sym2.iter().copied().fold(f64::MAX, f64::min);
        (lo > 0.0).then(|| hi / lo)
    };

    let mut statement = String::new();
    if runs.is_empty() {
        statement.push_str("No runs.");
    } else if strictly_decreasing {
        statement.push_str(
            "The dissipation D(nu) decreases strictly as nu decreases, consistent with \
             vanishing dissipation in the limit. No rate is inferred.",
        );
    } else {
        statement.push_str(
            "The dissipation D(nu) does not decrease strictly along the sweep; check \
             resolution flags and incomplete runs before reading the trend.",
        );
    }
    if let Some(c) = compactness {
        statement.push(' ');
        statement.push_str(&c.statement);
    }

    Verdict {
        dissipation_trend: trend,
        strictly_decreasing,
        last_over_first,
        sym2_spread,
        energy_gap: compactness.map(|c| c.energy_gap),
        compactness_proxy: compactness.map(|c| c.compactness_proxy),
        statement,
    }
}
