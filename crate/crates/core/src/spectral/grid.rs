use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::TWO_PI;

/// Uniform `n × n` grid on `[0, 2π)²`.
///
/// Node `(i, j)` sits at `(i h, j h)` and is stored at flat index `i * n + j`.
/// Wavenumbers per axis run over `{-n/2 + 1, …, n/2}`; the Nyquist mode `n/2`
/// is stored as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
}

impl GridSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n < 16 || !n.is_multiple_of(2) {
            return Err(LabError::Config(format!(
                "grid size must be even and at least 16, got {n}"
            )));
        }
        Ok(GridSpec { n })
    }

    /// Grid spacing `2π / n`.
    pub fn h(&self) -> f64 {
        TWO_PI / self.n as f64
    }

    /// Quadrature weight of one node.
    pub fn cell_area(&self) -> f64 {
        let h = self.h();
        h * h
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Signed wavenumber of storage index `m` along one axis.
    pub fn wavenumber(&self, m: usize) -> i64 {
        let n = self.n as i64;
        let m = m as i64;
        if m <= n / 2 {
            m
        } else {
            m - n
        }
    }

    /// Storage index of signed wavenumber `k` along one axis.
    pub fn index_of(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    /// Whether a single-axis wavenumber survives the 2/3 truncation (`3|k| < n`).
    pub fn keeps_mode(&self, k: i64) -> bool {
        3 * k.unsigned_abs() < self.n as u64
    }

    pub fn build(self) -> Result<Arc<Grid>> {
        Grid::get(self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Physical values to normalised coefficients (divides by `n²`).
    Forward,
    /// Coefficients to physical values (plain synthesis sum).
    Inverse,
}

/// A grid together with its FFT plans and wavenumber tables.
///
/// Instances are cached per `n` and shared through `Arc`; every method is
/// `&self` and allocates its own scratch, so a grid can be used from many
/// threads at once.
pub struct Grid {
    spec: GridSpec,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    k: Vec<f64>,
    keep: Vec<bool>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("n", &self.spec.n).finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Grid {
    /// Fetch (or build and cache) the grid of size `n`.
    pub fn get(n: usize) -> Result<Arc<Grid>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Grid>>>> = OnceLock::new();
        let spec = GridSpec::new(n)?;
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("grid cache poisoned");
        let grid = guard
            .entry(n)
            .or_insert_with(|| Arc::new(Grid::plan(spec)))
            .clone();
        Ok(grid)
    }

    fn plan(spec: GridSpec) -> Grid {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(spec.n);
        let inv = planner.plan_fft_inverse(spec.n);
        let k = (0..spec.n).map(|m| spec.wavenumber(m) as f64).collect();
        let keep = (0..spec.n)
            .map(|m| spec.keeps_mode(spec.wavenumber(m)))
            .collect();
        Grid {
            spec,
            fwd,
            inv,
            k,
            keep,
        }
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn h(&self) -> f64 {
        self.spec.h()
    }

    pub fn len(&self) -> usize {
        self.spec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spec.is_empty()
    }

    /// Wavenumber (as `f64`) of storage index `m` along one axis.
    #[inline]
    pub fn k(&self, m: usize) -> f64 {
        self.k[m]
    }

    #[inline]
    pub fn is_nyquist(&self, m: usize) -> bool {
        m == self.spec.n / 2
    }

    /// 2/3-rule mask along one axis.
    #[inline]
    pub fn keeps(&self, m: usize) -> bool {
        self.keep[m]
    }

    /// Physical coordinate of node index `m`.
    #[inline]
    pub fn coord(&self, m: usize) -> f64 {
        m as f64 * self.h()
    }

    /// In-place 2D transform. Size mismatch is a configuration error.
    pub fn transform(&self, data: &mut [Complex64], dir: Direction) -> Result<()> {
        if data.len() != self.len() {
            return Err(LabError::Config(format!(
                "buffer of length {} does not match a {}x{} grid",
                data.len(),
                self.n(),
                self.n()
            )));
        }
        self.fft2(data, dir);
        Ok(())
    }

    pub(crate) fn fft2(&self, data: &mut [Complex64], dir: Direction) {
        let n = self.n();
        let plan = match dir {
            Direction::Forward => &self.fwd,
            Direction::Inverse => &self.inv,
        };
        let scratch_len = plan.get_inplace_scratch_len();
        let rows = |buf: &mut [Complex64]| {
            buf.par_chunks_mut(n).for_each_init(
                || vec![Complex64::default(); scratch_len],
                |scratch, row| plan.process_with_scratch(row, scratch),
            );
        };
        rows(data);
        let mut t = vec![Complex64::default(); n * n];
        transpose(data, &mut t, n);
        rows(&mut t);
        transpose(&t, data, n);
        if dir == Direction::Forward {
            let norm = 1.0 / (n * n) as f64;
            data.par_iter_mut().for_each(|c| *c *= norm);
        }
    }
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], n: usize) {
    dst.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
        for (i, d) in row.iter_mut().enumerate() {
            *d = src[i * n + j];
        }
    });
}
