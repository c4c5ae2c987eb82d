//! Integrating-factor RK4 time stepping of vorticity and passive scalars.

mod config;
mod run;
mod state;
mod stepper;

pub use config::{uniform_samples, DtPolicy, SolverConfig, DEFAULT_SAMPLES};
pub use run::{run, Trajectory, TrajectoryFlags, RESOLVED_TAIL};
pub use state::{FlowState, VorticitySnapshot};
pub use stepper::{cfl_dt, step, StepOptions, Stepper, VELOCITY_FLOOR};
