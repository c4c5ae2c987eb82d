use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::datum::InitialDatum;
use super::generators::{h2_point_vortex, lp_blob, smooth_control, vortex_sheet};
use crate::error::{LabError, Result};
use crate::spectral::Grid;

/// Generator name and parameters, as written in a sweep config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    PointVortex {
        #[serde(default = "one")]
        mass: f64,
        #[serde(default = "torus_center")]
        center: (f64, f64),
        core: f64,
        /// When set, the core shrinks as `core · (ν/ν_max)^exponent`.
        #[serde(default)]
        stress_exponent: Option<f64>,
    },
    VortexSheet {
        start: (f64, f64),
        end: (f64, f64),
        #[serde(default = "one")]
        gamma: f64,
        thickness: f64,
    },
    LpBlob {
        p: f64,
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default = "one")]
        scale: f64,
    },
    TaylorGreen,
}

fn one() -> f64 {
    1.0
}

fn torus_center() -> (f64, f64) {
    (std::f64::consts::PI, std::f64::consts::PI)
}

impl FamilySpec {
    /// Member of the family for viscosity `nu`; `nu_max` anchors stress-mode scaling.
    pub fn generate(&self, grid: &Arc<Grid>, nu: f64, nu_max: f64) -> Result<InitialDatum> {
        match *self {
            FamilySpec::PointVortex {
                mass,
                center,
                core,
                stress_exponent,
            } => match stress_exponent {
                None => h2_point_vortex(grid, mass, center, core),
                Some(e) => {
                    if !(e > 0.0) {
                        return Err(LabError::Config(format!(
                            "stress exponent must be positive, got {e}"
                        )));
                    }
                    let eps = core * (nu / nu_max).powf(e);
                    Ok(h2_point_vortex(grid, mass, center, eps)?.with_stress(true))
                }
            },
            FamilySpec::VortexSheet {
                start,
                end,
                gamma,
                thickness,
            } => vortex_sheet(grid, start, end, gamma, thickness),
            FamilySpec::LpBlob {
                p,
                amplitude,
                scale,
            } => lp_blob(grid, p, amplitude, scale),
            FamilySpec::TaylorGreen => Ok(smooth_control(grid)),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FamilySpec::PointVortex { .. } => "point_vortex",
            FamilySpec::VortexSheet { .. } => "vortex_sheet",
            FamilySpec::LpBlob { .. } => "lp_blob",
            FamilySpec::TaylorGreen => "taylor_green",
        }
    }
}
