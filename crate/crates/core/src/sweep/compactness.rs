use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::solver::Trajectory;

/// Cross-viscosity comparison of completed trajectories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactnessReport {
    pub nus: Vec<f64>,
    pub times: Vec<f64>,
    /// `distances[s][i][j] = ‖u^{ν_i}(t_s) - u^{ν_j}(t_s)‖_{L²}`.
    pub distances: Vec<Vec<Vec<f64>>>,
    /// `D(ν)` over the whole run, in the order of `nus`.
    pub dissipation_trend: Vec<f64>,
    /// `E(0) - E(T)` of the smallest-viscosity run.
    pub energy_gap: f64,
    /// Largest velocity distance between the two smallest viscosities.
    pub compactness_proxy: f64,
    pub statement: String,
}

const STATEMENT: &str = "Given vanishing dissipation, the limit conserves energy if and only if \
the velocities converge strongly in L2; the proxy tracks the distance between the two smallest \
viscosities and the energy gap is reported alongside it without a pass or fail.";

pub fn compactness_report(trajectories: &[Trajectory]) -> Result<CompactnessReport> {
    let runs: Vec<&Trajectory> = trajectories.iter().filter(|t| t.complete).collect();
    if runs.len() < 2 {
        return Err(LabError::Config(format!(
            "compactness report needs two completed trajectories, got {}",
            runs.len()
        )));
    }
    let n = runs[0].n;
    if runs.iter().any(|t| t.n != n) {
        return Err(LabError::Config("trajectories live on different grids".into()));
    }
    let times: Vec<f64> = runs[0].snapshots.iter().map(|s| s.t).collect();
    let mut distances = Vec::with_capacity(times.len());
    for (s, &t) in times.iter().enumerate() {
        let tol = 1e-12 * t.abs().max(1.0);
        let snaps = runs
            .iter()
            .map(|r| {
                r.snapshots
                    .get(s)
                    .filter(|snap| (snap.t - t).abs() <= tol)
                    .ok_or_else(|| LabError::Config(format!("trajectories disagree on sample time {t}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let k = snaps.len();
        let mut m = vec![vec![0.0; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let d = snaps[i].velocity_distance(snaps[j])?;
                m[i][j] = d;
                m[j][i] = d;
            }
        }
        distances.push(m);
    }

    let dissipation_trend = runs
        .iter()
        .map(|r| r.records.last().map_or(0.0, |x| x.dissipated))
        .collect();

    let mut order: Vec<usize> = (0..runs.len()).collect();
    order.sort_by(|&a, &b| runs[a].nu.total_cmp(&runs[b].nu));
    let (a, b) = (order[0], order[1]);
    let smallest = runs[a];
    let energy_gap = smallest.baseline.energy0 - smallest.records.last().map_or(0.0, |r| r.energy);
    let compactness_proxy = distances.iter().map(|m| m[a][b]).fold(0.0, f64::max);

    Ok(CompactnessReport {
        nus: runs.iter().map(|r| r.nu).collect(),
        times,
        distances,
        dissipation_trend,
        energy_gap,
        compactness_proxy,
        statement: STATEMENT.to_string(),
    })
}
