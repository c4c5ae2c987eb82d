use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagnostics::{concentration_curve, DiskMask};
use crate::error::{LabError, Result};
use crate::spectral::{sample_bump, Grid, PhysicalField};

/// Static field sequence whose concentration is tabulated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub n: usize,
    #[serde(default = "unit")]
    pub mass: f64,
    /// Support radii of the bump members.
    #[serde(default)]
    pub widths: Vec<f64>,
    pub radii: Vec<f64>,
    /// Add the smooth member `|2 cos x cos y|`.
    #[serde(default)]
    pub smooth: bool,
    /// Add the zero field.
    #[serde(default)]
    pub zero: bool,
}

fn unit() -> f64 {
    1.0
}

impl OracleSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| LabError::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        toml::from_str(&text).map_err(|e| LabError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub label: String,
    pub width: Option<f64>,
    /// `C(R)` for each radius of the table.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleTable {
    pub radii: Vec<f64>,
    pub rows: Vec<OracleRow>,
    /// `C(R_max)` of the bump members, in order of decreasing width.
    pub atom_trend: Vec<f64>,
    /// Least-squares slope of `log C` against `log R` for the smooth member.
    pub smooth_slope: Option<f64>,
}

/// Concentration table of a bump sequence and optional control fields.
pub fn atomization_oracle(spec: &OracleSpec) -> Result<OracleTable> {
    let grid = Grid::get(spec.n)?;
    if spec.radii.is_empty() || spec.radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LabError::Config("oracle radii must be nonempty and increasing".into()));
    }
    if spec.widths.iter().any(|w| !(*w > 0.0)) || !(spec.mass > 0.0) {
        return Err(LabError::Config("oracle widths and mass must be positive".into()));
    }
    let masks = spec
        .radii
        .iter()
        .map(|&r| DiskMask::new(&grid, r))
        .collect::<Result<Vec<_>>>()?;
    let table = |f: &PhysicalField| -> Vec<f64> {
        concentration_curve(f, &masks).into_iter().map(|c| c.value).collect()
    };

    let mut widths = spec.widths.clone();
    widths.sort_by(|a, b| b.total_cmp(a));
    let pi = std::f64::consts::PI;
    let mut rows = Vec::new();
    for &w in &widths {
        let bump = sample_bump(&grid, (pi, pi), w).map(|v| spec.mass * v);
        rows.push(OracleRow {
            label: "bump".into(),
            width: Some(w),
            values: table(&bump),
        });
    }
    let atom_trend = rows.iter().map(|r| *r.values.last().expect("radii nonempty")).collect();

    let mut smooth_slope = None;
    if spec.smooth {
        let f = PhysicalField::from_fn(grid.clone(), |x, y| (2.0 * x.cos() * y.cos()).abs());
        let values = table(&f);
        smooth_slope = log_log_slope(&spec.radii, &values);
        rows.push(OracleRow {
            label: "smooth".into(),
            width: None,
            values,
        });
    }
    if spec.zero {
        rows.push(OracleRow {
            label: "zero".into(),
            width: None,
            values: table(&PhysicalField::zeros(grid.clone())),
        });
    }
    Ok(OracleTable {
        radii: spec.radii.clone(),
        rows,
        atom_trend,
        smooth_slope,
    })
}

/// Least-squares slope of `log y` on `log x` over the positive entries.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_field_row_is_zero() {
        let spec = OracleSpec {
            n: 32,
            mass: 1.0,
            widths: vec![],
            radii: vec![0.4, 0.8],
            smooth: false,
            zero: true,
        };
        let t = atomization_oracle(&spec).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn narrower_bumps_concentrate_more() {
        let spec = OracleSpec::from_toml_str("n = 64\nwidths = [0.25, 1.0, 0.5]\nradii = [0.3]").unwrap();
        let t = atomization_oracle(&spec).unwrap();
        assert_eq!(t.rows.iter().map(|r| r.width.unwrap()).collect::<Vec<_>>(), vec![1.0, 0.5, 0.25]);
        assert!(t.atom_trend.windows(2).all(|w| w[1] > w[0]));
        // a bump of radius 0.25 sits entirely inside a disk of radius 0.3
        assert!((t.atom_trend[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_log_slope_of_power_law() {
        let x = [0.1, 0.2, 0.4, 0.8];
        let y: Vec<f64> = x.iter().map(|r: &f64| 3.0 * r.powi(2)).collect();
        assert!((log_log_slope(&x, &y).unwrap() - 2.0).abs() < 1e-12);
        assert!(log_log_slope(&[1.0], &[1.0]).is_none());
    }

    #[test]
    fn bad_radii_rejected() {
        let spec = OracleSpec::from_toml_str("n = 32\nradii = [0.5, 0.2]").unwrap();
        assert!(atomization_oracle(&spec).is_err());
        assert!(OracleSpec::from_toml_str("n = 32\nradii = [0.5]\nshape = 1").is_err());
    }
}
