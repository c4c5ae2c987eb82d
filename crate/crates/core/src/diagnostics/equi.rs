use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::spectral::PhysicalField;

/// Convex superlinear weight used for the equi-integrability functional.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Beta {
    /// `s log(1 + s)`.
    #[default]
    SLog,
    /// `s^p` with `p > 1`.
    Power(f64),
}

impl Beta {
    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            Beta::SLog => s * s.ln_1p(),
            Beta::Power(p) => s.powf(p),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Beta::Power(p) if !(p > 1.0 && p.is_finite()) => Err(LabError::Config(format!(
                "beta exponent must exceed 1 to be superlinear, got {p}"
            ))),
            _ => Ok(()),
        }
    }
}

/// `∫ β(|f|)`.
pub fn beta_functional(f: &PhysicalField, beta: Beta) -> f64 {
    f.values().iter().map(|v| beta.eval(v.abs())).sum::<f64>() * f.grid().spec().cell_area()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquiProfile {
    pub lambdas: Vec<f64>,
    /// `∫_{|f| > λ} |f|` for each `λ`.
    pub tail_masses: Vec<f64>,
    pub beta_functional: f64,
}

/// Tail masses of `|f|` above each level plus the β-functional.
pub fn equi_integrability_profile(
    f: &PhysicalField,
    lambdas: &[f64],
    beta: Beta,
) -> Result<EquiProfile> {
    if lambdas.iter().any(|l| !(*l > 0.0)) || lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LabError::Config(
            "tail levels must be positive and strictly increasing".into(),
        ));
    }
    let area = f.grid().spec().cell_area();
    let tail_masses = lambdas
        .iter()
        .map(|&l| {
            f.values()
                .iter()
                .map(|v| v.abs())
                .filter(|&a| a > l)
                .sum::<f64>()
                * area
        })
        .collect();
    Ok(EquiProfile {
        lambdas: lambdas.to_vec(),
        tail_masses,
        beta_functional: beta_functional(f, beta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    #[test]
    fn bounded_field_has_no_tail_above_bound() {
        let g = Grid::get(32).unwrap();
        let f = PhysicalField::from_fn(g, |x, y| 0.9 * (x + y).sin());
        let p = equi_integrability_profile(&f, &[0.5, 0.95, 2.0], Beta::SLog).unwrap();
        assert!(p.tail_masses[0] > 0.0);
        assert_eq!(p.tail_masses[1], 0.0);
        assert_eq!(p.tail_masses[2], 0.0);
    }

    #[test]
    fn plateau_tail_equals_height_times_area() {
        let g = Grid::get(32).unwrap();
        let f = PhysicalField::from_fn(g.clone(), |x, y| if x < 1.0 && y < 2.0 { 2.0 } else { 0.0 });
        let nodes = f.values().iter().filter(|&&v| v > 0.0).count() as f64;
        let area = nodes * g.spec().cell_area();
        let p = equi_integrability_profile(&f, &[1.0], Beta::SLog).unwrap();
        assert!((p.tail_masses[0] - 2.0 * area).abs() < 1e-14);
        let expected = 2.0 * 3.0_f64.ln() * area;
        assert!((p.beta_functional - expected).abs() < 1e-13);
    }

    #[test]
    fn zero_field_and_bad_levels() {
        let g = Grid::get(16).unwrap();
        let f = PhysicalField::zeros(g);
        assert_eq!(beta_functional(&f, Beta::SLog), 0.0);
        assert!(equi_integrability_profile(&f, &[1.0, 1.0], Beta::SLog).is_err());
        assert!(equi_integrability_profile(&f, &[-1.0], Beta::SLog).is_err());
        assert!(Beta::Power(1.0).validate().is_err());
        assert!(Beta::Power(1.5).validate().is_ok());
    }
}
