use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::oracle::OracleTable;
use super::runner::SweepResult;
use super::summary::RunSummary;
use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Both,
}

impl OutputFormat {
    fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    fn json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

impl FromStr for OutputFormat {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "both" => Ok(OutputFormat::Both),
            other => Err(LabError::Config(format!("unknown output format `{other}`"))),
        }
    }
}

/// Compact JSON with every float written to 17 significant digits.
struct FixedFloats;

impl serde_json::ser::Formatter for FixedFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize with the fixed float format. Non-finite floats become `null`.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats);
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    let mut s = String::from_utf8(buf).expect("serde_json writes UTF-8");
    s.push('\n');
    s
}

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(float).unwrap_or_default()
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| LabError::io(path, e))
}

fn prepare(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_file(path, to_json_string(value).as_bytes())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| LabError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// `traj_<nu>.csv`, with `nu` in shortest exponent form.
pub fn trajectory_file_name(nu: f64) -> String {
    format!("traj_{nu:e}.csv")
}

pub const TRAJECTORY_COLUMNS: [&str; 13] = [
    "t",
    "energy",
    "enstrophy",
    "grad_enstrophy",
    "l1_vorticity",
    "conc_R_sqrtnu",
    "conc_R_eta_sqrtnu",
    "omega1_linf",
    "omega2_l2sq",
    "res_energy",
    "res_enstrophy",
    "res_prop25",
    "res_kolmogorov",
];

fn csv_error(path: &Path, e: csv::Error) -> LabError {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => LabError::io(path, e),
        other => LabError::Parse {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    }
}

pub fn write_trajectory_csv(path: &Path, run: &RunSummary) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(TRAJECTORY_COLUMNS).map_err(|e| csv_error(path, e))?;
    for r in &run.rows {
        let fields = [
            float(r.t),
            float(r.energy),
            float(r.enstrophy),
            float(r.grad_enstrophy),
            float(r.l1_vorticity),
            float(r.conc_r_sqrtnu),
            float(r.conc_r_eta_sqrtnu),
            float(r.omega1_linf),
            float(r.omega2_l2sq),
            float(r.res_energy),
            opt(r.res_enstrophy),
            opt(r.res_prop25),
            opt(r.res_kolmogorov),
        ];
        w.write_record(&fields).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| LabError::io(path, e))
}

/// Two columns `ν  D(ν)` over the completed runs.
pub fn dissipation_table(result: &SweepResult) -> String {
    let mut s = String::from("# nu D(nu)\n");
    for r in &result.runs {
        if let Some(d) = r.dissipation.filter(|_| r.complete) {
            let _ = writeln!(s, "{} {}", float(r.nu), float(d.total));
        }
    }
    s
}

/// Write the sweep artefacts into `dir` and return the paths written.
pub fn emit(result: &SweepResult, dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
    prepare(dir)?;
    let mut written = Vec::new();
    if format.csv() {
        for run in &result.runs {
            let path = dir.join(trajectory_file_name(run.nu));
            write_trajectory_csv(&path, run)?;
            written.push(path);
        }
        let path = dir.join("dissipation_vs_nu.dat");
        write_file(&path, dissipation_table(result).as_bytes())?;
        written.push(path);
    }
    if format.json() {
        let path = dir.join("sweep.json");
        write_json(&path, result)?;
        written.push(path);
    }
    Ok(written)
}

pub fn read_summary(path: &Path) -> Result<SweepResult> {
    read_json(path)
}

/// Single-trajectory artefacts: `traj_<nu>.csv` and `run.json`.
pub fn emit_run(run: &RunSummary, dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
    prepare(dir)?;
    let mut written = Vec::new();
    if format.csv() {
        let path = dir.join(trajectory_file_name(run.nu));
        write_trajectory_csv(&path, run)?;
        written.push(path);
    }
    if format.json() {
        let path = dir.join("run.json");
        write_json(&path, run)?;
        written.push(path);
    }
    Ok(written)
}

/// `oracle.csv` (one row per member, one column per radius) and `oracle.json`.
pub fn emit_oracle(table: &OracleTable, dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
    prepare(dir)?;
    let mut written = Vec::new();
    if format.csv() {
        let path = dir.join("oracle.csv");
        let mut w = csv::Writer::from_path(&path).map_err(|e| csv_error(&path, e))?;
        let mut header = vec!["label".to_string(), "width".to_string()];
        header.extend(table.radii.iter().map(|r| format!("C({})", float(*r))));
        w.write_record(&header).map_err(|e| csv_error(&path, e))?;
        for row in &table.rows {
            let mut rec = vec![row.label.clone(), opt(row.width)];
            rec.extend(row.values.iter().map(|v| float(*v)));
            w.write_record(&rec).map_err(|e| csv_error(&path, e))?;
        }
        w.flush().map_err(|e| LabError::io(&path, e))?;
        written.push(path);
    }
    if format.json() {
        let path = dir.join("oracle.json");
        write_json(&path, table)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_sweep, SweepConfig};

    fn tiny() -> SweepConfig {
        let mut c = SweepConfig::from_toml_str(
            "n = 32\nnu_list = [0.1, 0.05]\nfamily = \"taylor_green\"\nt_end = 0.2\nsamples = 4\n\
             dt_policy = \"fixed\"\ndt = 0.005\n",
        )
        .unwrap();
        c.output_dir = PathBuf::from("unused");
        c
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        let s = to_json_string(&vec![0.1_f64, 1.0 / 3.0, f64::NAN]);
        assert_eq!(s, "[1.0000000000000001e-1,3.3333333333333331e-1,null]\n");
        let back: Vec<Option<f64>> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[1], Some(1.0 / 3.0));
        assert_eq!(back[2], None);
    }

    #[test]
    fn empty_result_has_valid_schema() {
        let dir = tempfile::tempdir().unwrap();
        let r = SweepResult::empty(tiny());
        emit(&r, dir.path(), OutputFormat::Both).unwrap();
        let back = read_summary(&dir.path().join("sweep.json")).unwrap();
        assert!(back.runs.is_empty());
        assert_eq!(dissipation_table(&back), "# nu D(nu)\n");
    }

    #[test]
    fn sweep_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let r = run_sweep(&tiny()).unwrap();
        let paths = emit(&r, dir.path(), OutputFormat::Both).unwrap();
        assert_eq!(paths.len(), 4);
        let csv = fs::read_to_string(dir.path().join("traj_1e-1.csv")).unwrap();
        // header plus one row per sample time
        assert_eq!(csv.lines().count(), 1 + r.runs[0].rows.len());
        assert_eq!(r.runs[0].rows.len(), r.config.base.effective_samples().len());
        assert!(csv.starts_with("t,energy,enstrophy"));

        let json = fs::read(dir.path().join("sweep.json")).unwrap();
        let back = read_summary(&dir.path().join("sweep.json")).unwrap();
        assert_eq!(back.runs, r.runs);
        assert_eq!(back.verdict, r.verdict);
        assert_eq!(back.compactness, r.compactness);
        // re-emission is byte-identical
        let again = tempfile::tempdir().unwrap();
        emit(&back, again.path(), OutputFormat::Json).unwrap();
        assert_eq!(fs::read(again.path().join("sweep.json")).unwrap(), json);
    }

    #[test]
    fn unwritable_directory_names_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, b"x").unwrap();
        let target = blocker.join("sub");
        match emit(&SweepResult::empty(tiny()), &target, OutputFormat::Json) {
            Err(LabError::Io { path, .. }) => assert_eq!(path, target),
            other => panic!("expected an I/O error, got {other:?}"),
        }
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
