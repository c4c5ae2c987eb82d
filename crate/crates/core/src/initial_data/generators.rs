use std::sync::Arc;

use super::datum::InitialDatum;
use crate::error::{LabError, Result};
use crate::spectral::{add_bump, torus_delta, Grid, PhysicalField};
use crate::TWO_PI;

/// Smallest admissible core or thickness in grid spacings.
pub const MIN_CORE_CELLS: f64 = 4.0;

fn check_core(grid: &Grid, eps: f64, what: &'static str) -> Result<()> {
    let limit = MIN_CORE_CELLS * grid.h();
    if !(eps >= limit * (1.0 - 1e-12)) {
        return Err(LabError::UnderResolved {
            what,
            value: eps,
            limit,
        });
    }
    if eps > std::f64::consts::PI {
        return Err(LabError::Domain(format!("{what} {eps} exceeds half the torus")));
    }
    Ok(())
}

fn positive(value: f64, name: &str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(LabError::Domain(format!("{name} must be positive, got {value}")))
    }
}

/// Smoothed point vortex of mass `m` at `center` with core `eps`.
///
/// `Ω₀ = m ρ_ε(· - x₀)`, and the uniform background `-m/(2π)²` that makes
/// `ω₀` mean-free is placed in `f₀`.
pub fn h2_point_vortex(grid: &Arc<Grid>, mass: f64, center: (f64, f64), eps: f64) -> Result<InitialDatum> {
    positive(mass, "vortex mass")?;
    check_core(grid, eps, "vortex core")?;
    let mut pos = vec![0.0; grid.len()];
    add_bump(&mut pos, grid, center, eps, mass);
    let background = -mass / (TWO_PI * TWO_PI);
    InitialDatum::from_parts(
        "point_vortex",
        PhysicalField::from_fn(grid.clone(), |_, _| background),
        PhysicalField::new(grid.clone(), pos)?,
        Some(eps),
    )
}

/// Straight vortex sheet from `start` to `end` with line density `gamma`,
/// smoothed across a thickness `eps`.
///
/// The line measure is discretised by the midpoint rule with spacing at most
/// `h/4`, each point carrying a unit-mass bump, so `∫Ω₀ = γ · length`.
pub fn vortex_sheet(
    grid: &Arc<Grid>,
    start: (f64, f64),
    end: (f64, f64),
    gamma: f64,
    eps: f64,
) -> Result<InitialDatum> {
    positive(gamma, "sheet density")?;
    check_core(grid, eps, "sheet thickness")?;
    let (dx, dy) = (end.0 - start.0, end.1 - start.1);
    let length = dx.hypot(dy);
    if !(length > 0.0) {
        return Err(LabError::Domain("vortex sheet has zero length".into()));
    }
    let points = (length / (0.25 * grid.h())).ceil() as usize;
    let weight = gamma * length / points as f64;
    let mut pos = vec![0.0; grid.len()];
    for q in 0..points {
        let s = (q as f64 + 0.5) / points as f64;
        let p = (
            (start.0 + s * dx).rem_euclid(TWO_PI),
            (start.1 + s * dy).rem_euclid(TWO_PI),
        );
        add_bump(&mut pos, grid, p, eps, weight);
    }
    let background = -gamma * length / (TWO_PI * TWO_PI);
    InitialDatum::from_parts(
        "vortex_sheet",
        PhysicalField::from_fn(grid.clone(), |_, _| background),
        PhysicalField::new(grid.clone(), pos)?,
        Some(eps),
    )
}

/// Radial blob at the centre of the torus with `|ω₀| ≈ A (s/r)^{2/p}` near
/// the origin, lying in `L^p` but no better.
///
/// The profile is `A (s/r)^{2/p} (1 + log(s/r))^{-2/p} (1 - r²/s²)²` on
/// `r < s`, with `r` capped below at `h`. The logarithmic factor makes the
/// `L^p` norm converge as the grid is refined. The whole mean-free field is
/// assigned to `f₀`.
pub fn lp_blob(grid: &Arc<Grid>, p: f64, amplitude: f64, scale: f64) -> Result<InitialDatum> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(LabError::Domain(format!("blob exponent must be at least 1, got {p}")));
    }
    positive(amplitude, "blob amplitude")?;
    positive(scale, "blob scale")?;
    if scale > std::f64::consts::PI {
        return Err(LabError::Domain(format!("blob scale {scale} exceeds half the torus")));
    }
    let h = grid.h();
    let c = std::f64::consts::PI;
    let q = 2.0 / p;
    let raw = PhysicalField::from_fn(grid.clone(), |x, y| {
        let r = torus_delta(x, c).hypot(torus_delta(y, c));
        if r >= scale {
            return 0.0;
        }
        let rc = r.max(h);
        let ratio = scale / rc;
        let cut = 1.0 - (r / scale).powi(2);
        amplitude * ratio.powf(q) / (1.0 + ratio.ln()).powf(q) * cut * cut
    });
    let mean = raw.mean();
    let f0 = raw.map(|v| v - mean);
    InitialDatum::from_parts("lp_blob", f0, PhysicalField::zeros(grid.clone()), None)
}

/// Taylor–Green vortex `ω₀ = -2 cos x cos y`, entirely in `f₀`.
pub fn smooth_control(grid: &Arc<Grid>) -> InitialDatum {
    InitialDatum::from_parts(
        "taylor_green",
        PhysicalField::from_fn(grid.clone(), |x, y| -2.0 * x.cos() * y.cos()),
        PhysicalField::zeros(grid.clone()),
        None,
    )
    .expect("parts share a grid")
}
