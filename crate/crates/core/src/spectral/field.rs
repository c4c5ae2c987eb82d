use std::ops::{Add, Sub};
use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;

use super::grid::{Direction, Grid};
use crate::error::{LabError, Result};
use crate::TWO_PI;

/// Real scalar field sampled at the grid nodes.
#[derive(Debug, Clone)]
pub struct PhysicalField {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

/// Real scalar field stored as normalised Fourier coefficients.
///
/// Coefficients are kept for the full `n × n` wavenumber block. Hermitian
/// symmetry `c(-k) = conj(c(k))` holds for every field built from real data
/// and is preserved by every operation in this module.
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Arc<Grid>,
    coeffs: Vec<Complex64>,
}

/// Quadrature norms of a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    /// `‖∇f‖_{L²}`, evaluated spectrally.
    pub h1_semi: f64,
}

fn check_len(grid: &Grid, len: usize) -> Result<()> {
    if len != grid.len() {
        return Err(LabError::Config(format!(
            "{len} values do not fit a {n}x{n} grid",
            n = grid.n()
        )));
    }
    Ok(())
}

impl PhysicalField {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        check_len(&grid, values.len())?;
        Ok(PhysicalField { grid, values })
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let values = vec![0.0; grid.len()];
        PhysicalField { grid, values }
    }

    /// Sample `f(x, y)` at every node.
    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(f64, f64) -> f64 + Sync) -> Self {
        let n = grid.n();
        let h = grid.h();
        let values = (0..n * n)
            .into_par_iter()
            .map(|idx| f((idx / n) as f64 * h, (idx % n) as f64 * h))
            .collect();
        PhysicalField { grid, values }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n() + j]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64 + Sync) -> PhysicalField {
        PhysicalField {
            grid: self.grid.clone(),
            values: self.values.par_iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn abs(&self) -> PhysicalField {
        self.map(f64::abs)
    }

    /// `Σ f h²`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.spec().cell_area()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn l1(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() * self.grid.spec().cell_area()
    }

    pub fn l2(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.spec().cell_area()).sqrt()
    }

    pub fn linf(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn to_spectral(&self) -> SpectralField {
        let mut coeffs: Vec<Complex64> =
            self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.grid.fft2(&mut coeffs, Direction::Forward);
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// Forward transform of two real fields with a single complex FFT.
    pub fn to_spectral_pair(a: &PhysicalField, b: &PhysicalField) -> (SpectralField, SpectralField) {
        let grid = a.grid.clone();
        let mut z: Vec<Complex64> = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(&x, &y)| Complex64::new(x, y))
            .collect();
        grid.fft2(&mut z, Direction::Forward);
        let (ca, cb) = split_pair(&grid, &z);
        (
            SpectralField {
                grid: grid.clone(),
                coeffs: ca,
            },
            SpectralField { grid, coeffs: cb },
        )
    }
}

/// Separate the transforms of `a` and `b` from the transform of `a + i b`.
pub(crate) fn split_pair(grid: &Grid, z: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = grid.n();
    let mut ca = vec![Complex64::default(); n * n];
    let mut cb = vec![Complex64::default(); n * n];
    ca.par_chunks_mut(n)
        .zip(cb.par_chunks_mut(n))
        .enumerate()
        .for_each(|(i, (ra, rb))| {
            let im = (n - i) % n;
            for j in 0..n {
                let jm = (n - j) % n;
                let zk = z[i * n + j];
                let zm = z[im * n + jm].conj();
                ra[j] = (zk + zm) * 0.5;
                // (zk - zm) / (2i)
                let d = zk - zm;
                rb[j] = Complex64::new(d.im * 0.5, -d.re * 0.5);
            }
        });
    (ca, cb)
}

impl SpectralField {
    pub fn zeros(grid: Arc<Grid>) -> Self {
        let coeffs = vec![Complex64::default(); grid.len()];
        SpectralField { grid, coeffs }
    }

    pub fn from_coeffs(grid: Arc<Grid>, coeffs: Vec<Complex64>) -> Result<Self> {
        check_len(&grid, coeffs.len())?;
        Ok(SpectralField { grid, coeffs })
    }

    /// Build a field from `(k1, k2, coefficient)` triples; Hermitian partners
    /// are filled in automatically.
    pub fn from_modes(grid: Arc<Grid>, modes: &[(i64, i64, Complex64)]) -> Self {
        let mut f = SpectralField::zeros(grid);
        for &(k1, k2, c) in modes {
            f.add_mode(k1, k2, c);
        }
        f
    }

    fn add_mode(&mut self, k1: i64, k2: i64, c: Complex64) {
        let spec = self.grid.spec();
        let a = spec.index_of(k1) * spec.n + spec.index_of(k2);
        let b = spec.index_of(-k1) * spec.n + spec.index_of(-k2);
        if a == b {
            self.coeffs[a] += Complex64::new(c.re, 0.0);
        } else {
            self.coeffs[a] += c;
            self.coeffs[b] += c.conj();
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient at signed wavenumber `(k1, k2)`.
    pub fn coeff(&self, k1: i64, k2: i64) -> Complex64 {
        let spec = self.grid.spec();
        self.coeffs[spec.index_of(k1) * spec.n + spec.index_of(k2)]
    }

    /// Spatial mean, i.e. the `(0, 0)` coefficient.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn to_physical(&self) -> PhysicalField {
        let mut z = self.coeffs.clone();
        self.grid.fft2(&mut z, Direction::Inverse);
        PhysicalField {
            grid: self.grid.clone(),
            values: z.into_iter().map(|c| c.re).collect(),
        }
    }

    /// Inverse transform of two Hermitian fields with a single complex FFT.
    pub fn to_physical_pair(a: &SpectralField, b: &SpectralField) -> (PhysicalField, PhysicalField) {
        let grid = a.grid.clone();
        let mut z: Vec<Complex64> = a
            .coeffs
            .par_iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| x + Complex64::new(-y.im, y.re))
            .collect();
        grid.fft2(&mut z, Direction::Inverse);
        let (va, vb) = z.into_iter().map(|c| (c.re, c.im)).unzip();
        (
            PhysicalField {
                grid: grid.clone(),
                values: va,
            },
            PhysicalField { grid, values: vb },
        )
    }

    /// Multiply each coefficient by `m(k1, k2)`.
    pub fn multiply(&self, m: impl Fn(f64, f64) -> Complex64 + Sync) -> SpectralField {
        let n = self.grid.n();
        let grid = &self.grid;
        let mut coeffs = self.coeffs.clone();
        coeffs.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let k1 = grid.k(i);
            for (j, c) in row.iter_mut().enumerate() {
                *c *= m(k1, grid.k(j));
            }
        });
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// `∂₁^a ∂₂^b f`, i.e. multiplication by `(i k₁)^a (i k₂)^b`.
    ///
    /// For an odd order along an axis the Nyquist line of that axis is zeroed,
    /// since `i k` at `k = n/2` has no real-valued counterpart.
    pub fn derivative(&self, a: u32, b: u32) -> SpectralField {
        let n = self.grid.n();
        let grid = &self.grid;
        let mut coeffs = self.coeffs.clone();
        let ipow = |p: u32| -> Complex64 {
            match p % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            }
        };
        let phase = ipow(a + b);
        coeffs.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let k1 = grid.k(i);
            let drop_row = a % 2 == 1 && grid.is_nyquist(i);
            for (j, c) in row.iter_mut().enumerate() {
                if drop_row || (b % 2 == 1 && grid.is_nyquist(j)) {
                    *c = Complex64::default();
                } else {
                    *c *= phase * (k1.powi(a as i32) * grid.k(j).powi(b as i32));
                }
            }
        });
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    pub fn laplacian(&self) -> SpectralField {
        self.multiply(|k1, k2| Complex64::new(-(k1 * k1 + k2 * k2), 0.0))
    }

    pub fn scale(&self, s: f64) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `‖f‖²_{L²}` via Parseval.
    pub fn l2_sq(&self) -> f64 {
        TWO_PI * TWO_PI * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    /// `‖∇f‖²_{L²} = (2π)² Σ |k|² |f̂|²`.
    pub fn h1_semi_sq(&self) -> f64 {
        let n = self.grid.n();
        let grid = &self.grid;
        let s: f64 = self
            .coeffs
            .par_chunks(n)
            .enumerate()
            .map(|(i, row)| {
                let k1 = grid.k(i);
                row.iter()
                    .enumerate()
                    .map(|(j, c)| (k1 * k1 + grid.k(j) * grid.k(j)) * c.norm_sqr())
                    .sum::<f64>()
            })
            .collect::<Vec<f64>>()
            .into_iter()
            .sum();
        // row partials are summed in order so the result does not depend on
        // the thread count
        TWO_PI * TWO_PI * s
    }

    pub fn norms(&self) -> Norms {
        let phys = self.to_physical();
        Norms {
            l1: phys.l1(),
            l2: phys.l2(),
            linf: phys.linf(),
            h1_semi: self.h1_semi_sq().sqrt(),
        }
    }

    /// Largest `|c(k) - conj(c(-k))|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.grid.n();
        let mut worst = 0.0_f64;
        for i in 0..n {
            let im = (n - i) % n;
            for j in 0..n {
                let jm = (n - j) % n;
                let d = (self.coeffs[i * n + j] - self.coeffs[im * n + jm].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Fraction of `Σ|f̂|²` carried by modes outside the 2/3 band.
    pub fn tail_fraction(&self) -> f64 {
        let n = self.grid.n();
        let (mut tail, mut total) = (0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let e = self.coeffs[i * n + j].norm_sqr();
                total += e;
                if !(self.grid.keeps(i) && self.grid.keeps(j)) {
                    tail += e;
                }
            }
        }
        if total > 0.0 {
            tail / total
        } else {
            0.0
        }
    }

    /// Copy with every mode outside the 2/3 band removed.
    pub fn truncated(&self) -> SpectralField {
        let n = self.grid.n();
        let grid = &self.grid;
        let mut coeffs = self.coeffs.clone();
        coeffs.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, c) in row.iter_mut().enumerate() {
                if !(grid.keeps(i) && grid.keeps(j)) {
                    *c = Complex64::default();
                }
            }
        });
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    pub(crate) fn same_grid(&self, other: &SpectralField) -> Result<()> {
        if self.grid.n() != other.grid.n() {
            return Err(LabError::Config(format!(
                "grid mismatch: {} vs {}",
                self.grid.n(),
                other.grid.n()
            )));
        }
        Ok(())
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;

    fn add(self, rhs: &SpectralField) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;

    fn sub(self, rhs: &SpectralField) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for &PhysicalField {
    type Output = PhysicalField;

    fn sub(self, rhs: &PhysicalField) -> PhysicalField {
        PhysicalField {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for &PhysicalField {
    type Output = PhysicalField;

    fn add(self, rhs: &PhysicalField) -> PhysicalField {
        PhysicalField {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}
