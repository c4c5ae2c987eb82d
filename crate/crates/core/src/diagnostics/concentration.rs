use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::spectral::{Direction, Grid, PhysicalField};
use crate::TWO_PI;

/// Relative slack on the squared radius so that radii which are exact
/// multiples of `h` include their boundary ring despite rounding.
const RING_SLACK: f64 = 1e-12;

/// Closed disk of radius `r` (torus metric) sampled on the grid, stored as
/// the spectral multiplier of the convolution `a ↦ Σ_y a(y) 1_B(x - y) h²`.
#[derive(Debug, Clone)]
pub struct DiskMask {
    grid: Arc<Grid>,
    radius: f64,
    nodes: usize,
    multiplier: Vec<f64>,
}

impl DiskMask {
    /// Requires `r ≥ h`.
    pub fn new(grid: &Arc<Grid>, radius: f64) -> Result<Self> {
        if !(radius >= grid.h() * (1.0 - 1e-12)) {
            return Err(LabError::UnderResolved {
                what: "concentration radius",
                value: radius,
                limit: grid.h(),
            });
        }
        Ok(Self::new_unchecked(grid, radius))
    }

    /// Mask without the resolution check; below `h` it is the single centre node.
    pub(crate) fn new_unchecked(grid: &Arc<Grid>, radius: f64) -> Self {
        let n = grid.n();
        let r2 = (radius / grid.h()).powi(2) * (1.0 + RING_SLACK);
        let mut buf = vec![Complex64::default(); n * n];
        let mut nodes = 0;
        for i in 0..n {
            let di = i.min(n - i) as f64;
            for j in 0..n {
                let dj = j.min(n - j) as f64;
                if di * di + dj * dj <= r2 {
                    buf[i * n + j] = Complex64::new(1.0, 0.0);
                    nodes += 1;
                }
            }
        }
        grid.fft2(&mut buf, Direction::Forward);
        let multiplier = buf.iter().map(|c| c.re * TWO_PI * TWO_PI).collect();
        DiskMask {
            grid: grid.clone(),
            radius,
            nodes,
            multiplier,
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Number of grid nodes in the disk.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Discrete disk area `nodes · h²`.
    pub fn area(&self) -> f64 {
        self.nodes as f64 * self.grid.spec().cell_area()
    }
}

/// `C(R) = max_{x₀} Σ_{|x - x₀| ≤ R} |ω(x)| h²` and the centre attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Concentration {
    pub radius: f64,
    pub value: f64,
    /// Node indices `(i, j)` of the maximising centre; the first in row-major
    /// order when several centres tie.
    pub center: (usize, usize),
}

/// Concentration function of `|field|` at radius `radius ≥ h`.
pub fn concentration_function(field: &PhysicalField, radius: f64) -> Result<Concentration> {
    let mask = DiskMask::new(field.grid(), radius)?;
    Ok(concentration_curve(field, std::slice::from_ref(&mask))[0])
}

/// Concentration of `|field|` for every mask, sharing one forward transform.
pub fn concentration_curve(field: &PhysicalField, masks: &[DiskMask]) -> Vec<Concentration> {
    let grid = field.grid();
    let n = grid.n();
    let mut hat: Vec<Complex64> = field
        .values()
        .iter()
        .map(|v| Complex64::new(v.abs(), 0.0))
        .collect();
    grid.fft2(&mut hat, Direction::Forward);

    let mut out = Vec::with_capacity(masks.len());
    for pair in masks.chunks(2) {
        // both convolutions are real, so pack the second into the imaginary part
        let mut buf: Vec<Complex64> = match pair {
            [a, b] => hat
                .par_iter()
                .zip(a.multiplier.par_iter().zip(&b.multiplier))
                .map(|(c, (ma, mb))| c * Complex64::new(*ma, 0.0) + c * Complex64::new(0.0, *mb))
                .collect(),
            [a] => hat
                .par_iter()
                .zip(&a.multiplier)
                .map(|(c, m)| c * *m)
                .collect(),
            _ => unreachable!(),
        };
        grid.fft2(&mut buf, Direction::Inverse);
        for (slot, mask) in pair.iter().enumerate() {
            let mut best = f64::NEG_INFINITY;
            let mut at = 0;
            for (idx, c) in buf.iter().enumerate() {
                let v = if slot == 0 { c.re } else { c.im };
                if v > best {
                    best = v;
                    at = idx;
                }
            }
            out.push(Concentration {
                radius: mask.radius,
                value: best.max(0.0),
                center: (at / n, at % n),
            });
        }
    }
    out
}

/// Geometric ladder `2h, 4h, 8h, …` up to `π/2`.
pub fn radius_ladder(grid: &Grid) -> Vec<f64> {
    let mut r = 2.0 * grid.h();
    let mut out = Vec::new();
    while r <= std::f64::consts::FRAC_PI_2 * (1.0 + 1e-12) {
        out.push(r);
        r *= 2.0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::sample_bump;
    use crate::spectral::testing::random_nodes;

    /// Direct O(n⁴) evaluation with the same closed-disk rule.
    fn brute_force(field: &PhysicalField, radius: f64) -> (f64, (usize, usize)) {
        let g = field.grid();
        let n = g.n() as i64;
        let r2 = (radius / g.h()).powi(2) * (1.0 + 1e-12);
        let mut best = (f64::NEG_INFINITY, (0, 0));
        for ci in 0..n {
            for cj in 0..n {
                let mut s = 0.0;
                for i in 0..n {
                    let d = (i - ci).rem_euclid(n);
                    let di = d.min(n - d) as f64;
                    for j in 0..n {
                        let d = (j - cj).rem_euclid(n);
                        let dj = d.min(n - d) as f64;
                        if di * di + dj * dj <= r2 {
                            s += field.at(i as usize, j as usize).abs();
                        }
                    }
                }
                let v = s * g.spec().cell_area();
                if v > best.0 {
                    best = (v, (ci as usize, cj as usize));
                }
            }
        }
        best
    }

    #[test]
    fn fft_matches_brute_force() {
        for n in [16, 32] {
            let g = Grid::get(n).unwrap();
            let f = random_nodes(&g, n as u64, -1.0, 1.0);
            for m in [2.0, 4.0, 8.0] {
                let r = m * g.h();
                let c = concentration_function(&f, r).unwrap();
                let (v, _) = brute_force(&f, r);
                assert!((c.value - v).abs() < 1e-12, "n={n} r={r}: {} vs {v}", c.value);
            }
        }
    }

    #[test]
    fn single_bump_is_fully_captured() {
        let g = Grid::get(64).unwrap();
        let bump = sample_bump(&g, (3.0, 2.0), 0.3).map(|v| 2.0 * v);
        let c = concentration_function(&bump, 0.5).unwrap();
        assert!((c.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn uniform_field_gives_disk_area() {
        let g = Grid::get(32).unwrap();
        let f = PhysicalField::from_fn(g.clone(), |_, _| 0.7);
        let mask = DiskMask::new(&g, 5.0 * g.h()).unwrap();
        let c = concentration_function(&f, 5.0 * g.h()).unwrap();
        assert!((c.value - 0.7 * mask.area()).abs() < 1e-12);
        // 5² = 3² + 4², so the boundary ring includes the Pythagorean nodes
        assert_eq!(mask.nodes(), 81);
    }

    #[test]
    fn below_grid_scale_is_rejected() {
        let g = Grid::get(32).unwrap();
        let f = PhysicalField::zeros(g.clone());
        assert!(concentration_function(&f, 0.5 * g.h()).is_err());
        assert_eq!(concentration_function(&f, g.h()).unwrap().value, 0.0);
    }

    #[test]
    fn curve_is_monotone_and_bounded_by_l1() {
        let g = Grid::get(64).unwrap();
        let f = random_nodes(&g, 11, -2.0, 1.0);
        let masks: Vec<_> = radius_ladder(&g)
            .into_iter()
            .map(|r| DiskMask::new(&g, r).unwrap())
            .collect();
        let curve = concentration_curve(&f, &masks);
        assert_eq!(curve.len(), masks.len());
        for w in curve.windows(2) {
            assert!(w[1].value >= w[0].value - 1e-12);
        }
        assert!(curve.last().unwrap().value <= f.l1() * (1.0 + 1e-12));
    }

    #[test]
    fn ties_resolve_to_first_centre() {
        let g = Grid::get(16).unwrap();
        let f = PhysicalField::zeros(g.clone());
        let c = concentration_function(&f, 2.0 * g.h()).unwrap();
        assert_eq!(c.center, (0, 0));
    }
}
