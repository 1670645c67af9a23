use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::grid::HardyGrid;
use crate::{Error, Result};

/// Default bound on the relative negative-frequency energy of an
/// [`H2Vector`].
pub const DEFAULT_HARDY_TOL: f64 = 1e-9;

/// Coefficients over the full frequency grid whose negative-frequency energy
/// is negligible.
#[derive(Debug, Clone, PartialEq)]
pub struct H2Vector {
    coeffs: Vec<Complex64>,
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm2(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

impl H2Vector {
    /// Accepts `coeffs` if the negative-frequency energy is at most
    /// `hardy_tol` times the total.
    pub fn from_full(coeffs: Vec<Complex64>, hardy_tol: f64) -> Result<Self> {
        let n = coeffs.len();
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("length {n} is not a grid size")));
        }
        let neg: f64 = coeffs[n / 2..].iter().map(|c| c.norm_sqr()).sum();
        let total: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if neg > hardy_tol * total {
            return Err(Error::InvalidParameter(format!(
                "negative-frequency energy fraction {:e} exceeds {hardy_tol:e}",
                neg / total
            )));
        }
        Ok(Self { coeffs })
    }

    /// Embeds nonnegative-frequency coefficients (length `N/2`).
    pub fn from_half(half: &[Complex64]) -> Self {
        let mut coeffs = half.to_vec();
        coeffs.resize(2 * half.len(), Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    pub fn zeros(grid: &HardyGrid) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n_points()],
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// The nonnegative-frequency half.
    pub fn half(&self) -> &[Complex64] {
        &self.coeffs[..self.coeffs.len() / 2]
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.coeffs)
    }
}

/// Orthogonal projection onto the Hardy subspace: zeroes every strictly
/// negative frequency.
pub fn project_hardy(full: &[Complex64]) -> H2Vector {
    let n = full.len();
    let mut coeffs = full.to_vec();
    coeffs[n / 2..]
        .iter_mut()
        .for_each(|c| *c = Complex64::new(0.0, 0.0));
    H2Vector { coeffs }
}

/// Raised-cosine window equal to 1 on the inner 80% of `[-L, L)` and
/// falling to 0 over the outer 10% on each side.
pub fn taper(grid: &HardyGrid) -> Vec<f64> {
    let l = grid.spatial_halfwidth();
    let edge = 0.1 * l;
    (0..grid.n_points())
        .map(|k| {
            let d = l - grid.x(k).abs();
            if d >= edge {
                1.0
            } else {
                0.5 * (1.0 - (PI * d / edge).cos())
            }
        })
        .collect()
}

/// Seeded random Hardy test vector, localized in space and smooth in
/// frequency.
///
/// A sum of four atoms `c/(x − w)²` with poles `w` in the lower half-plane
/// (`Im w ∈ [-2, -0.5]`, `Re w ∈ [-L/4, L/4]`), tapered, transformed and
/// projected; normalized to unit length.
pub fn random_hardy_vector<R: Rng + ?Sized>(grid: &HardyGrid, rng: &mut R) -> H2Vector {
    let l = grid.spatial_halfwidth();
    let atoms: Vec<(Complex64, Complex64)> = (0..4)
        .map(|_| {
            let w = Complex64::new(rng.random_range(-0.25 * l..0.25 * l), -rng.random_range(0.5..2.0));
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            (w, c)
        })
        .collect();
    let window = taper(grid);
    let samples: Vec<Complex64> = (0..grid.n_points())
        .map(|k| {
            let x = Complex64::new(grid.x(k), 0.0);
            let v: Complex64 = atoms.iter().map(|(w, c)| c / ((x - w) * (x - w))).sum();
            v * window[k]
        })
        .collect();
    let mut v = project_hardy(&grid.to_frequency(&samples));
    let nrm = v.norm();
    if nrm > 0.0 {
        v.coeffs.iter_mut().for_each(|c| *c /= nrm);
    }
    v
}
