use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;

use super::state::FlowState;
use crate::error::{LabError, Result};
use crate::spectral::{biot_savart_unchecked, velocity_gradient_sq, Grid, PhysicalField, SpectralField};

/// Lower bound on `‖u‖_∞` in the CFL rule.
pub const VELOCITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOptions {
    pub dealias: bool,
    pub advection: bool,
}

impl Default for StepOptions {
    fn default() -> Self {
        StepOptions {
            dealias: true,
            advection: true,
        }
    }
}

/// `safety · h / max(‖u‖_∞, floor)`, capped at `dt_max`. Diffusion adds no
/// constraint because it is integrated exactly. Expects `safety ∈ (0, 1]`.
pub fn cfl_dt(state: &FlowState, safety: f64, dt_max: f64) -> f64 {
    debug_assert!(safety > 0.0 && safety <= 1.0);
    let (u1, u2) = state.velocity().to_physical();
    let umax = u1
        .values()
        .iter()
        .zip(u2.values())
        .map(|(a, b)| a.hypot(*b))
        .fold(0.0, f64::max);
    (safety * state.grid().h() / umax.max(VELOCITY_FLOOR)).min(dt_max)
}

/// One integrating-factor RK4 step of `∂ₜq + u·∇q = νΔq` for `ω` and every scalar.
pub fn step(state: &FlowState, dt: f64, opts: StepOptions) -> Result<FlowState> {
    Stepper::new(state.grid().clone(), state.nu, opts).step(state, dt)
}

/// Reusable stepper that caches the diffusion factors for the last `dt`.
#[derive(Debug, Clone)]
pub struct Stepper {
    grid: Arc<Grid>,
    nu: f64,
    opts: StepOptions,
    cached_dt: f64,
    /// `exp(-ν|k|² dt)` and `exp(-ν|k|² dt/2)`.
    full: Vec<f64>,
    half: Vec<f64>,
    keep: Vec<f64>,
}

type Fields = Vec<Vec<Complex64>>;

impl Stepper {
    pub fn new(grid: Arc<Grid>, nu: f64, opts: StepOptions) -> Self {
        let n = grid.n();
        let mut keep = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if grid.keeps(i) && grid.keeps(j) {
                    keep[i * n + j] = 1.0;
                }
            }
        }
        Stepper {
            grid,
            nu,
            opts,
            cached_dt: f64::NAN,
            full: Vec::new(),
            half: Vec::new(),
            keep,
        }
    }

    fn factors(&mut self, dt: f64) {
        if self.cached_dt == dt {
            return;
        }
        let n = self.grid.n();
        let g = &self.grid;
        let nu = self.nu;
        self.half = (0..n * n)
            .map(|idx| {
                let (k1, k2) = (g.k(idx / n), g.k(idx % n));
                (-nu * (k1 * k1 + k2 * k2) * 0.5 * dt).exp()
            })
            .collect();
        self.full = self.half.iter().map(|e| e * e).collect();
        self.cached_dt = dt;
    }

    pub fn step(&mut self, state: &FlowState, dt: f64) -> Result<FlowState> {
        Ok(self.step_with_dissipation(state, dt)?.0)
    }

    /// Step and also return `ν ∫ ‖∇u‖²` over the step, integrated with the
    /// same RK4 weights on the stage states so the energy balance closes to
    /// the order of the scheme.
    pub fn step_with_dissipation(&mut self, state: &FlowState, dt: f64) -> Result<(FlowState, f64)> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(LabError::Config(format!("time step must be positive, got {dt}")));
        }
        self.factors(dt);
        let names: Vec<String> = state.scalars().iter().map(|(n, _)| n.clone()).collect();
        let q: Fields = std::iter::once(state.omega().coeffs().to_vec())
            .chain(state.scalars().iter().map(|(_, f)| f.coeffs().to_vec()))
            .collect();

        let (e, eh) = (&self.full, &self.half);
        let k1 = self.rhs(&q);
        let a = zip_map(&q, &k1, |i, qv, kv| eh[i] * (qv + 0.5 * dt * kv));
        let k2 = self.rhs(&a);
        let b = zip_map(&q, &k2, |i, qv, kv| eh[i] * qv + 0.5 * dt * kv);
        let k3 = self.rhs(&b);
        let c = zip_map(&q, &k3, |i, qv, kv| e[i] * qv + dt * eh[i] * kv);
        let k4 = self.rhs(&c);
        let rate = |f: &Fields| {
            velocity_gradient_sq(
                &SpectralField::from_coeffs(self.grid.clone(), f[0].clone()).expect("sized by grid"),
            )
        };
        let dissipated = self.nu * dt / 6.0 * (rate(&q) + 2.0 * rate(&a) + 2.0 * rate(&b) + rate(&c));
        let next: Fields = (0..q.len())
            .map(|f| {
                (0..q[f].len())
                    .into_par_iter()
                    .map(|i| {
                        e[i] * q[f][i]
                            + dt / 6.0
                                * (e[i] * k1[f][i] + 2.0 * eh[i] * (k2[f][i] + k3[f][i]) + k4[f][i])
                    })
                    .collect()
            })
            .collect();

        let t = state.t + dt;
        if next.iter().any(|v| v.iter().any(|c| !(c.re.is_finite() && c.im.is_finite()))) {
            return Err(LabError::BlowUp { t, dt });
        }
        let mut fields = next.into_iter().map(|c| {
            SpectralField::from_coeffs(self.grid.clone(), c).expect("sized by grid")
        });
        let omega = fields.next().expect("vorticity present");
        let scalars = names.into_iter().zip(fields).collect();
        Ok((FlowState::from_parts(t, state.nu, omega, scalars), dissipated))
    }

    /// `-u·∇q` for every field, with `u` induced by the first field.
    fn rhs(&self, q: &Fields) -> Fields {
        let n2 = self.grid.len();
        if !self.opts.advection {
            return vec![vec![Complex64::default(); n2]; q.len()];
        }
        let grid = &self.grid;
        let field = |c: &Vec<Complex64>| SpectralField::from_coeffs(grid.clone(), c.clone()).expect("sized by grid");
        let omega = field(&q[0]);
        let (u1, u2) = biot_savart_unchecked(&omega, self.opts.dealias).to_physical();

        let mut products: Vec<PhysicalField> = Vec::with_capacity(q.len());
        for c in q {
            let s = field(c);
            let s = if self.opts.dealias { s.truncated() } else { s };
            let (d1, d2) = SpectralField::to_physical_pair(&s.derivative(1, 0), &s.derivative(0, 1));
            let values = (0..n2)
                .into_par_iter()
                .map(|i| -(u1.values()[i] * d1.values()[i] + u2.values()[i] * d2.values()[i]))
                .collect();
            products.push(PhysicalField::new(grid.clone(), values).expect("sized by grid"));
        }

        let mut out = Vec::with_capacity(q.len());
        for pair in products.chunks(2) {
            match pair {
                [a, b] => {
                    let (sa, sb) = PhysicalField::to_spectral_pair(a, b);
                    out.push(sa.into_coeffs());
                    out.push(sb.into_coeffs());
                }
                [a] => out.push(a.to_spectral().into_coeffs()),
                _ => unreachable!(),
            }
        }
        for c in &mut out {
            if self.opts.dealias {
                c.par_iter_mut().zip(&self.keep).for_each(|(v, k)| *v *= *k);
            }
            // advection by a divergence-free field conserves every mean
            c[0] = Complex64::default();
        }
        out
    }
}

fn zip_map(
    a: &Fields,
    b: &Fields,
    f: impl Fn(usize, Complex64, Complex64) -> Complex64 + Sync,
) -> Fields {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            x.par_iter()
                .zip(y.par_iter())
                .enumerate()
                .map(|(i, (xv, yv))| f(i, *xv, *yv))
                .collect()
        })
        .collect()
}
