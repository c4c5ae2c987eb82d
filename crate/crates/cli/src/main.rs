//! `vvlab`: run trajectories, viscosity sweeps and concentration oracles.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use vvlab_core::sweep::{
    atomization_oracle, emit, emit_oracle, emit_run, read_summary, run_sweep, summarise,
    sweep_data, write_json, OracleSpec, OutputFormat,
};
use vvlab_core::initial_data::validate_hypotheses;
use vvlab_core::{solver, LabError, SweepConfig};

#[derive(Parser)]
#[command(name = "vvlab", version, about = "Vanishing-viscosity experiments on the 2D torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one trajectory at the first viscosity of the config.
    Run(Common),
    /// Integrate one trajectory per viscosity and write the sweep summary.
    Sweep(Common),
    /// Tabulate the concentration function of a static field sequence.
    Oracle(Common),
    /// Check the hypotheses on the initial data of a sweep config.
    Validate(Common),
    /// Re-emit the files of a stored `sweep.json` (given as `--config`).
    Report(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to the one in the config, else `out`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Both,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
            Format::Both => OutputFormat::Both,
        }
    }
}

fn exit_code(e: &LabError) -> u8 {
    match e {
        LabError::AllRunsFailed | LabError::BlowUp { .. } => 2,
        LabError::Io { .. } => 3,
        _ => 1,
    }
}

fn load_sweep(args: &Common) -> Result<SweepConfig, LabError> {
    let mut config = SweepConfig::from_path(&args.config)?;
    if let Some(out) = &args.out {
        config.output_dir = out.clone();
    }
    if let Some(w) = args.workers {
        config.workers = w;
        config.validate()?;
    }
    Ok(config)
}

fn report_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

fn out_dir(args: &Common) -> &Path {
    args.out.as_deref().unwrap_or(Path::new("out"))
}

fn execute(command: Command) -> Result<(), LabError> {
    match command {
        Command::Run(args) => {
            let config = load_sweep(&args)?;
            let mut base = config.base.clone();
            base.nu = config.nu_list[0];
            let datum = config.family.generate(&base.grid()?, base.nu, base.nu)?;
            let traj = solver::run(&base, &datum)?;
            if !traj.complete {
                eprintln!("run stopped early: {}", traj.failure.as_deref().unwrap_or("unknown"));
                return Err(LabError::AllRunsFailed);
            }
            let summary = summarise(&traj, base.delta, base.t_end, &config.concentration_times);
            report_paths(&emit_run(&summary, &config.output_dir, args.format.into())?);
            if let Some(d) = summary.dissipation {
                println!("nu = {:e}  D = {:.10e}  steps = {}", summary.nu, d.total, summary.steps);
            }
        }
        Command::Sweep(args) => {
            let config = load_sweep(&args)?;
            info!("sweep over {} viscosities on n = {}", config.nu_list.len(), config.base.n);
            let result = run_sweep(&config)?;
            report_paths(&emit(&result, &config.output_dir, args.format.into())?);
            for run in &result.runs {
                let d = run.dissipation.map(|d| d.total);
                println!(
                    "nu = {:e}  complete = {}  resolved = {}  D = {}",
                    run.nu,
                    run.complete,
                    run.flags.resolved,
                    d.map_or("-".into(), |d| format!("{d:.10e}"))
                );
            }
            println!("{}", result.verdict.statement);
        }
        Command::Oracle(args) => {
            let spec = OracleSpec::from_path(&args.config)?;
            let table = atomization_oracle(&spec)?;
            report_paths(&emit_oracle(&table, out_dir(&args), args.format.into())?);
            if let Some(s) = table.smooth_slope {
                println!("smooth member log-log slope = {s:.4}");
            }
        }
        Command::Validate(args) => {
            let config = load_sweep(&args)?;
            let data = sweep_data(&config)?;
            let report = validate_hypotheses(&data, &config.lambdas)?;
            std::fs::create_dir_all(&config.output_dir)
                .map_err(|e| LabError::io(&config.output_dir, e))?;
            let path = config.output_dir.join("hypotheses.json");
            write_json(&path, &report)?;
            report_paths(&[path]);
            println!(
                "sup L1 = {:.6e}  H1 proxy = {:.6e}  signs ok = {}  stress = {}",
                report.sup_l1,
                report.h1_proxy,
                report.signs_ok(),
                report.stress
            );
        }
        Command::Report(args) => {
            let result = read_summary(&args.config)?;
            report_paths(&emit(&result, out_dir(&args), args.format.into())?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
