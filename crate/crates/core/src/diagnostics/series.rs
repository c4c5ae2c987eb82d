use serde::{Deserialize, Serialize};

use super::record::DiagnosticsRecord;
use crate::error::{LabError, Result};
use crate::spectral::VelocityField;

/// Kinetic energy `½ ∫ |u|²`.
pub fn kinetic_energy(u: &VelocityField) -> f64 {
    u.kinetic_energy()
}

/// Trapezoid rule over arbitrary (sorted) nodes.
pub fn trapezoid(ts: &[f64], ys: &[f64]) -> f64 {
    ts.windows(2)
        .zip(ys.windows(2))
        .map(|(t, y)| 0.5 * (t[1] - t[0]) * (y[0] + y[1]))
        .sum()
}

fn time_tol(b: f64) -> f64 {
    1e-12 * b.abs().max(1.0)
}

/// Records inside `[a, b]`, which must start at `a`, end at `b` and hold at
/// least three samples.
fn window(records: &[DiagnosticsRecord], a: f64, b: f64) -> Result<&[DiagnosticsRecord]> {
    let tol = time_tol(b);
    let lo = records.partition_point(|r| r.t < a - tol);
    let hi = records.partition_point(|r| r.t <= b + tol);
    let slice = &records[lo..hi.max(lo)];
    let covers = slice.first().is_some_and(|r| (r.t - a).abs() <= tol)
        && slice.last().is_some_and(|r| (r.t - b).abs() <= tol);
    if slice.len() < 3 || !covers {
        return Err(LabError::InsufficientSamples {
            needed: 3,
            found: slice.len(),
            a,
            b,
        });
    }
    Ok(slice)
}

fn integrate(records: &[DiagnosticsRecord], a: f64, b: f64, y: impl Fn(&DiagnosticsRecord) -> f64) -> Result<f64> {
    let w = window(records, a, b)?;
    let ts: Vec<f64> = w.iter().map(|r| r.t).collect();
    let ys: Vec<f64> = w.iter().map(y).collect();
    Ok(trapezoid(&ts, &ys))
}

/// `ν ∫_a^b ‖∇u‖²` by the trapezoid rule on the sample times.
pub fn dissipation_integral(records: &[DiagnosticsRecord], nu: f64, a: f64, b: f64) -> Result<f64> {
    Ok(nu * integrate(records, a, b, |r| r.dissipation_rate)?)
}

/// Dissipation over `[0, δ]` and `[δ, T]`; `total` is their sum by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DissipationSplit {
    pub early: f64,
    pub late: f64,
    pub total: f64,
}

pub fn dissipation_split(
    records: &[DiagnosticsRecord],
    nu: f64,
    a: f64,
    delta: f64,
    b: f64,
) -> Result<DissipationSplit> {
    let early = dissipation_integral(records, nu, a, delta)?;
    let late = dissipation_integral(records, nu, delta, b)?;
    Ok(DissipationSplit {
        early,
        late,
        total: early + late,
    })
}

/// Same split read from the dissipation the stepper accumulates between
/// samples, which is integrated at the Runge–Kutta stages rather than on the
/// sample grid.
pub fn accumulated_dissipation_split(
    records: &[DiagnosticsRecord],
    delta: f64,
    b: f64,
) -> Result<DissipationSplit> {
    let w = window(records, 0.0, b)?;
    let tol = time_tol(b);
    let mid = w
        .iter()
        .find(|r| (r.t - delta).abs() <= tol)
        .ok_or(LabError::InsufficientSamples {
            needed: 1,
            found: 0,
            a: delta,
            b: delta,
        })?;
    let early = mid.dissipated - w[0].dissipated;
    let late = w[w.len() - 1].dissipated - mid.dissipated;
    Ok(DissipationSplit {
        early,
        late,
        total: early + late,
    })
}

/// `ν ∫_δ^T ‖ω‖²` and `ν² ∫_δ^T ‖∇ω‖²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sym2 {
    pub enstrophy_integral: f64,
    pub grad_integral: f64,
}

pub fn sym2_integrals(records: &[DiagnosticsRecord], nu: f64, delta: f64, t_end: f64) -> Result<Sym2> {
    Ok(Sym2 {
        enstrophy_integral: nu * integrate(records, delta, t_end, |r| r.enstrophy)?,
        grad_integral: nu * nu * integrate(records, delta, t_end, |r| r.grad_enstrophy)?,
    })
}

/// Behaviour of `E(0) - E(t)` as `t → 0⁺`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RightContinuity {
    pub times: Vec<f64>,
    pub gaps: Vec<f64>,
    /// Intercept of the least-squares line through the earliest gaps.
    pub fitted_limit: f64,
    pub fitted_slope: f64,
    /// `ν ‖∇u(0)‖²`, the slope predicted by the energy equality.
    pub expected_slope: f64,
}

/// Number of earliest positive-time samples used by the line fit.
const FIT_POINTS: usize = 3;

pub fn energy_right_continuity_probe(
    records: &[DiagnosticsRecord],
    nu: f64,
    delta: f64,
) -> Result<RightContinuity> {
    let w = window(records, 0.0, delta)?;
    let e0 = w[0].energy;
    let (times, gaps): (Vec<f64>, Vec<f64>) = w[1..].iter().map(|r| (r.t, e0 - r.energy)).unzip();
    let k = times.len().min(FIT_POINTS);
    let (slope, intercept) = line_fit(&times[..k], &gaps[..k]);
    Ok(RightContinuity {
        times,
        gaps,
        fitted_limit: intercept,
        fitted_slope: slope,
        expected_slope: nu * w[0].dissipation_rate,
    })
}

fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}
