use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagnostics::{Beta, DiagnosticsConfig};
use crate::error::{LabError, Result};
use crate::initial_data::FamilySpec;
use crate::solver::{uniform_samples, DtPolicy, SolverConfig, DEFAULT_SAMPLES};

/// A viscosity sweep: one trajectory of `base` per entry of `nu_list`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Template; its `nu` is replaced by each sweep value.
    pub base: SolverConfig,
    /// Strictly decreasing, positive.
    pub nu_list: Vec<f64>,
    pub family: FamilySpec,
    // Where and how the sweep runs does not change its numbers, so neither
    // is echoed into the summary.
    #[serde(skip_serializing, default)]
    pub output_dir: PathBuf,
    #[serde(skip_serializing, default = "one_worker")]
    pub workers: usize,
    /// Times at which concentration curves are kept in the summary.
    pub concentration_times: Vec<f64>,
    /// Levels for the tail profile of the compact parts.
    pub lambdas: Vec<f64>,
}

fn one_worker() -> usize {
    1
}

impl SweepConfig {
    pub fn eta(&self) -> f64 {
        self.base.diagnostics.eta
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu_list.is_empty() {
            return Err(LabError::Config("nu_list is empty".into()));
        }
        if self.nu_list.iter().any(|nu| !(*nu > 0.0 && nu.is_finite())) {
            return Err(LabError::Config("every viscosity must be positive".into()));
        }
        if self.nu_list.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(LabError::Config("nu_list must be strictly decreasing".into()));
        }
        if self.workers == 0 {
            return Err(LabError::Config("workers must be at least 1".into()));
        }
        for &nu in &self.nu_list {
            let mut c = self.base.clone();
            c.nu = nu;
            c.validate()?;
        }
        if self
            .concentration_times
            .iter()
            .any(|t| !(*t >= 0.0 && *t <= self.base.t_end))
        {
            return Err(LabError::Config("concentration times must lie in [0, t_end]".into()));
        }
        if self.lambdas.iter().any(|l| !(*l > 0.0)) || self.lambdas.windows(2).any(|w| w[1] <= w[0]) {
            return Err(LabError::Config("lambdas must be positive and strictly increasing".into()));
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: SweepFile = toml::from_str(text).map_err(|e| LabError::Config(e.to_string()))?;
        file.into_config()
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        let file: SweepFile = toml::from_str(&text).map_err(|e| LabError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        file.into_config()
    }
}

/// Flat on-disk form of [`SweepConfig`]. Unknown keys are rejected, and so
/// are keys that belong to a family other than the selected one.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    n: Option<usize>,
    t_end: Option<f64>,
    delta: Option<f64>,
    samples: Option<usize>,
    sample_times: Option<Vec<f64>>,
    nu_list: Option<Vec<f64>>,
    nu_max: Option<f64>,
    nu_count: Option<usize>,
    eta: Option<f64>,
    beta_power: Option<f64>,
    dt_policy: Option<String>,
    dt: Option<f64>,
    cfl_safety: Option<f64>,
    dt_max: Option<f64>,
    dealias: Option<bool>,
    premollify: Option<f64>,
    snapshot_kmax: Option<usize>,
    output_dir: Option<PathBuf>,
    workers: Option<usize>,
    concentration_times: Option<Vec<f64>>,
    lambdas: Option<Vec<f64>>,
    family: Option<String>,
    // point_vortex
    mass: Option<f64>,
    center: Option<(f64, f64)>,
    core: Option<f64>,
    stress_exponent: Option<f64>,
    // vortex_sheet
    start: Option<(f64, f64)>,
    end: Option<(f64, f64)>,
    gamma: Option<f64>,
    thickness: Option<f64>,
    // lp_blob
    p: Option<f64>,
    amplitude: Option<f64>,
    scale: Option<f64>,
}

fn require<T>(v: Option<T>, key: &str) -> Result<T> {
    v.ok_or_else(|| LabError::Config(format!("missing key `{key}`")))
}

impl SweepFile {
    fn family(&self) -> Result<FamilySpec> {
        let name = self.family.as_deref().unwrap_or("point_vortex");
        let pv = [
            ("mass", self.mass.is_some()),
            ("center", self.center.is_some()),
            ("core", self.core.is_some()),
            ("stress_exponent", self.stress_exponent.is_some()),
        ];
        let sheet = [
            ("start", self.start.is_some()),
            ("end", self.end.is_some()),
            ("gamma", self.gamma.is_some()),
            ("thickness", self.thickness.is_some()),
        ];
        let blob = [
            ("p", self.p.is_some()),
            ("amplitude", self.amplitude.is_some()),
            ("scale", self.scale.is_some()),
        ];
        let foreign: Vec<&[(&str, bool)]> = match name {
            "point_vortex" => vec![&sheet, &blob],
            "vortex_sheet" => vec![&pv, &blob],
            "lp_blob" => vec![&pv, &sheet],
            "taylor_green" => vec![&pv, &sheet, &blob],
            other => return Err(LabError::Config(format!("unknown family `{other}`"))),
        };
        if let Some((key, _)) = foreign.iter().flat_map(|g| g.iter()).find(|(_, set)| *set) {
            return Err(LabError::Config(format!("key `{key}` does not apply to family `{name}`")));
        }
        let pi = std::f64::consts::PI;
        Ok(match name {
            "point_vortex" => FamilySpec::PointVortex {
                mass: self.mass.unwrap_or(1.0),
                center: self.center.unwrap_or((pi, pi)),
                core: require(self.core, "core")?,
                stress_exponent: self.stress_exponent,
            },
            "vortex_sheet" => FamilySpec::VortexSheet {
                start: require(self.start, "start")?,
                end: require(self.end, "end")?,
                gamma: self.gamma.unwrap_or(1.0),
                thickness: require(self.thickness, "thickness")?,
            },
            "lp_blob" => FamilySpec::LpBlob {
                p: require(self.p, "p")?,
                amplitude: self.amplitude.unwrap_or(1.0),
                scale: self.scale.unwrap_or(1.0),
            },
            _ => FamilySpec::TaylorGreen,
        })
    }

    fn into_config(self) -> Result<SweepConfig> {
        let family = self.family()?;
        let n = require(self.n, "n")?;
        let t_end = self.t_end.unwrap_or(1.0);
        let dt = match self.dt_policy.as_deref().unwrap_or("cfl") {
            "cfl" => {
                if self.dt.is_some() {
                    return Err(LabError::Config("key `dt` needs dt_policy = \"fixed\"".into()));
                }
                DtPolicy::Cfl {
                    safety: self.cfl_safety.unwrap_or(0.5),
                    dt_max: self.dt_max.unwrap_or(0.01),
                }
            }
            "fixed" => {
                if self.cfl_safety.is_some() || self.dt_max.is_some() {
                    return Err(LabError::Config(
                        "keys `cfl_safety` and `dt_max` need dt_policy = \"cfl\"".into(),
                    ));
                }
                DtPolicy::Fixed {
                    dt: require(self.dt, "dt")?,
                }
            }
            other => return Err(LabError::Config(format!("unknown dt_policy `{other}`"))),
        };
        let nu_list = match (self.nu_list, self.nu_max, self.nu_count) {
            (Some(list), None, None) => list,
            (None, Some(max), count) => {
                // geometric with ratio 1/2
                (0..count.unwrap_or(4)).map(|i| max * 0.5_f64.powi(i as i32)).collect()
            }
            (None, None, None) => {
                return Err(LabError::Config("give either `nu_list` or `nu_max`".into()))
            }
            _ => {
                return Err(LabError::Config(
                    "`nu_list` cannot be combined with `nu_max` / `nu_count`".into(),
                ))
            }
        };
        let sample_times = match (self.sample_times, self.samples) {
            (Some(_), Some(_)) => {
                return Err(LabError::Config("give `samples` or `sample_times`, not both".into()))
            }
            (Some(ts), None) => ts,
            (None, count) => uniform_samples(t_end, count.unwrap_or(DEFAULT_SAMPLES)),
        };
        let delta = self.delta.unwrap_or(0.1 * t_end);
        let mut diagnostics = DiagnosticsConfig::default();
        if let Some(eta) = self.eta {
            diagnostics.eta = eta;
        }
        if let Some(p) = self.beta_power {
            diagnostics.beta = Beta::Power(p);
        }
        let base = SolverConfig {
            n,
            nu: nu_list.first().copied().unwrap_or(1.0),
            t_end,
            dt,
            dealias: self.dealias.unwrap_or(true),
            advection: true,
            sample_times,
            delta,
            premollify: self.premollify,
            snapshot_kmax: self.snapshot_kmax.unwrap_or(64),
            diagnostics,
        };
        let config = SweepConfig {
            base,
            nu_list,
            family,
            output_dir: self.output_dir.unwrap_or_else(|| PathBuf::from("out")),
            workers: self.workers.unwrap_or(1),
            concentration_times: self.concentration_times.unwrap_or_else(|| vec![delta, t_end]),
            lambdas: self.lambdas.unwrap_or_else(|| vec![0.5, 1.0, 2.0, 4.0, 8.0, 16.0]),
        };
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
n = 32
nu_list = [0.1, 0.05]
family = "taylor_green"
"#;

    #[test]
    fn minimal_file_parses_with_defaults() {
        let c = SweepConfig::from_toml_str(MINIMAL).unwrap();
        assert_eq!(c.base.n, 32);
        assert_eq!(c.nu_list, vec![0.1, 0.05]);
        assert_eq!(c.family, FamilySpec::TaylorGreen);
        assert_eq!(c.eta(), 0.5);
        assert!((c.base.delta - 0.1).abs() < 1e-15);
        assert!(matches!(c.base.dt, DtPolicy::Cfl { .. }));
    }

    #[test]
    fn unknown_and_foreign_keys_fail() {
        assert!(SweepConfig::from_toml_str(&format!("{MINIMAL}\ncolour = 3\n")).is_err());
        assert!(SweepConfig::from_toml_str(&format!("{MINIMAL}\ncore = 0.2\n")).is_err());
        assert!(SweepConfig::from_toml_str(&format!("{MINIMAL}\ndt = 0.1\n")).is_err());
    }

    #[test]
    fn nu_list_must_decrease_and_be_nonempty() {
        assert!(SweepConfig::from_toml_str("n = 32\nnu_list = []\nfamily = \"taylor_green\"").is_err());
        assert!(
            SweepConfig::from_toml_str("n = 32\nnu_list = [0.1, 0.2]\nfamily = \"taylor_green\"").is_err()
        );
    }

    #[test]
    fn geometric_default_sequence() {
        let c = SweepConfig::from_toml_str("n = 32\nnu_max = 0.08\nnu_count = 3\nfamily = \"taylor_green\"")
            .unwrap();
        assert_eq!(c.nu_list, vec![0.08, 0.04, 0.02]);
    }

    #[test]
    fn point_vortex_requires_core() {
        let e = SweepConfig::from_toml_str("n = 64\nnu_list = [0.01]\nfamily = \"point_vortex\"").unwrap_err();
        assert!(e.to_string().contains("core"));
        let c = SweepConfig::from_toml_str("n = 64\nnu_list = [0.01]\ncore = 0.5\nmass = 2.0").unwrap();
        assert!(matches!(c.family, FamilySpec::PointVortex { mass, .. } if mass == 2.0));
    }
}
